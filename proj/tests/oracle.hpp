// Independent reference computations used to cross-check the library.
#pragma once

#include "umbilic/jet.hpp"

#include <map>
#include <vector>

namespace oracle {

using umbilic::JetPoly;
using umbilic::Scalar;

/// Rank of a dense rational matrix by Gaussian elimination.
inline int rank(std::vector<std::vector<Scalar>> m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Scalar f = m[i][c] / m[r][c];
      for (int k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

/// dim Q[x,y] / (<f, g> + m^K).
inline int colength_mod_power(const JetPoly& f, const JetPoly& g, int K) {
  std::vector<std::pair<int, int>> mons;
  for (int d = 0; d < K; ++d)
    for (int i = d; i >= 0; --i) mons.emplace_back(i, d - i);
  std::map<std::pair<int, int>, int> idx;
  for (std::size_t k = 0; k < mons.size(); ++k) idx[mons[k]] = static_cast<int>(k);
  std::vector<std::vector<Scalar>> rows;
  for (const JetPoly* h : {&f, &g}) {
    for (auto [a, b] : mons) {
      std::vector<Scalar> row(mons.size(), Scalar(0));
      bool any = false;
      for (const auto& [m, c] : h->terms()) {
        int i = m.i + a, j = m.j + b;
        if (i + j >= K) continue;
        row[idx[{i, j}]] = c;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  return static_cast<int>(mons.size()) - rank(std::move(rows));
}

/// Local intersection number by linear algebra: the colength of <f,g> + m^K
/// is nondecreasing in K and equals the true value once it stops growing.
/// Returns -1 when no stabilisation happens below max_k.
inline int intersection_number(const JetPoly& f, const JetPoly& g, int max_k = 24) {
  int prev = -1;
  for (int K = 1; K <= max_k; ++K) {
    int d = colength_mod_power(f, g, K);
    if (d == prev) return d;
    prev = d;
  }
  return -1;
}

}  // namespace oracle
