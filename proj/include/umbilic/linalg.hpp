// Exact Gaussian elimination over the rationals.
#pragma once

#include "umbilic/scalar.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace umbilic {

using Matrix = std::vector<std::vector<Scalar>>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> row_reduce(Matrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size()), r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Scalar inv = Scalar(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      Scalar f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(Matrix m) { return static_cast<int>(row_reduce(m).size()); }

/// Solves A x = b; nullopt when inconsistent or not uniquely solvable.
inline std::optional<std::vector<Scalar>> solve_unique(const Matrix& a, const std::vector<Scalar>& b) {
  if (a.empty()) return std::nullopt;
  int n = static_cast<int>(a[0].size());
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = row_reduce(aug);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  if (static_cast<int>(piv.size()) != n) return std::nullopt;
  std::vector<Scalar> x(n);
  for (int i = 0; i < n; ++i) x[piv[i]] = aug[i][n];
  return x;
}

}  // namespace umbilic
