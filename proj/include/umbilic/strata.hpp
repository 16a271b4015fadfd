// Stratifications of the parameter planes of the cubic normal forms: the
// beta-plane at a spacelike umbilic and the (s, t)-planes of the timelike
// forms (i) and (iii). Open regions carry a configuration read from a frozen
// catalog of sample points.
#pragma once

#include "umbilic/analysis.hpp"
#include "umbilic/normal_forms.hpp"
#include "umbilic/surface.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#ifndef UMBILIC_DEFAULT_FIXTURE_DIR
#define UMBILIC_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace umbilic {

enum class StrataPlane { Beta, TimelikeI, TimelikeIIIPlus, TimelikeIIIMinus };

inline const char* plane_name(StrataPlane p) {
  switch (p) {
    case StrataPlane::Beta: return "beta";
    case StrataPlane::TimelikeI: return "timelike_i";
    case StrataPlane::TimelikeIIIPlus: return "timelike_iii_plus";
    case StrataPlane::TimelikeIIIMinus: return "timelike_iii_minus";
  }
  return "?";
}

inline StrataPlane parse_plane(const std::string& s) {
  for (StrataPlane p : {StrataPlane::Beta, StrataPlane::TimelikeI, StrataPlane::TimelikeIIIPlus,
                        StrataPlane::TimelikeIIIMinus})
    if (s == plane_name(p)) return p;
  throw Error(ErrorCode::InvalidArgument, "unknown plane '" + s + "'");
}

enum class StratumCurve { DegenerateDiscriminant, PhiRepeatedRoot, PhiAlphaCommonRoot, InnerHypocycloid };

inline const char* curve_name(StratumCurve c) {
  switch (c) {
    case StratumCurve::DegenerateDiscriminant: return "degenerate_discriminant";
    case StratumCurve::PhiRepeatedRoot: return "phi_repeated_root";
    case StratumCurve::PhiAlphaCommonRoot: return "phi_alpha_common_root";
    case StratumCurve::InnerHypocycloid: return "inner_hypocycloid";
  }
  return "?";
}

/// An exceptional curve {poly(s, t) = 0}; multiplicity_curve marks the curve
/// on which m_u > 1.
struct StrataCurve {
  StratumCurve kind;
  JetPoly poly;
  bool multiplicity_curve = false;
};

namespace detail {

inline JetPoly st_poly(std::initializer_list<std::tuple<int, int, Scalar>> terms) {
  JetPoly p(JetPoly::kExact);
  for (const auto& [i, j, c] : terms) p.add_term(i, j, c);
  return p;
}

}  // namespace detail

inline std::vector<StrataCurve> strata_curves(StrataPlane plane) {
  using detail::st_poly;
  const JetPoly circle = st_poly({{2, 0, 1}, {0, 2, 1}, {0, 0, -9}});
  switch (plane) {
    case StrataPlane::Beta:
      return {
          {StratumCurve::DegenerateDiscriminant, circle, true},
          // Implicit form of beta(theta) = -3(2 e^{2 i theta} + e^{-4 i theta}).
          {StratumCurve::PhiRepeatedRoot,
           st_poly({{4, 0, 1}, {3, 0, 24}, {2, 2, 2}, {2, 0, 162}, {1, 2, -72}, {0, 4, 1}, {0, 2, 162}, {0, 0, -2187}}),
           false},
          {StratumCurve::PhiAlphaCommonRoot, circle, true},
          {StratumCurve::InnerHypocycloid,
           st_poly({{0, 0, -27}, {2, 0, 18}, {3, 0, -8}, {4, 0, 1}, {0, 2, 18}, {1, 2, 24}, {2, 2, 2}, {0, 4, 1}}),
           false},
      };
    case StrataPlane::TimelikeI:
      return {
          {StratumCurve::DegenerateDiscriminant, st_poly({{2, 0, 1}, {0, 2, -1}, {0, 1, -3}}), true},
          {StratumCurve::PhiRepeatedRoot,
           st_poly({{4, 0, 8},
                    {2, 2, rational(-61, 4)},
                    {0, 4, 8},
                    {2, 1, -39},
                    {0, 3, 36},
                    {2, 0, -9},
                    {0, 2, 54},
                    {0, 1, 27}}),
           false},
          // (s + t + 1)(s - t - 1)
          {StratumCurve::PhiAlphaCommonRoot, st_poly({{2, 0, 1}, {0, 2, -1}, {0, 1, -2}, {0, 0, -1}}), false},
      };
    case StrataPlane::TimelikeIIIPlus:
    case StrataPlane::TimelikeIIIMinus: {
      Scalar e = plane == StrataPlane::TimelikeIIIPlus ? 1 : -1;
      // (t - 1)(1 + t -+ s)
      JetPoly disc = st_poly({{0, 1, 1}, {0, 0, -1}}) * st_poly({{0, 0, 1}, {0, 1, 1}, {1, 0, -e}});
      return {
          {StratumCurve::DegenerateDiscriminant, disc, true},
          {StratumCurve::PhiRepeatedRoot, st_poly({{2, 0, 3}, {0, 2, -4}, {0, 1, -4}, {0, 0, -4}}), false},
      };
    }
  }
  return {};
}

/// The patch whose cubic is the normal form with parameters (s, t): the
/// spacelike form Re(z^3 + beta z^2 zbar) on a Euclidean z-graph, or the
/// timelike forms on a Minkowski y-graph.
inline MongePatch strata_patch(StrataPlane plane, const Scalar& s, const Scalar& t, const Scalar& kappa = 1) {
  const int E = JetPoly::kExact;
  JetPoly x = JetPoly::u(E), y = JetPoly::v(E);
  if (plane == StrataPlane::Beta) {
    JetPoly c = JetPoly::from_terms({{{3, 0}, 1 + s}, {{2, 1}, -t}, {{1, 2}, s - 3}, {{0, 3}, -t}}, E);
    return MongePatch(Ambient::Euclidean, GraphAxis::Z, (x * x + y * y) * (kappa / 2) + c);
  }
  CubicFormTag form = plane == StrataPlane::TimelikeI        ? CubicFormTag::I
                      : plane == StrataPlane::TimelikeIIIPlus ? CubicFormTag::IIIPlus
                                                              : CubicFormTag::IIIMinus;
  return MongePatch(Ambient::Minkowski, GraphAxis::Y, (x * x - y * y) * (kappa / 2) + reduced_cubic(form, s, t).poly());
}

inline BdeGerm strata_one_jet(StrataPlane plane, const Scalar& s, const Scalar& t) {
  return principal_bde(strata_patch(plane, s, t), 1);
}

using PlanePoint = std::pair<Scalar, Scalar>;

struct RegionRecord {
  int id = 0;
  PlanePoint sample;
  std::string config;  ///< ConfigLabel::to_string() at the sample
  std::vector<PlanePoint> anchors;
};

struct RegionCatalog {
  StrataPlane plane = StrataPlane::Beta;
  std::vector<RegionRecord> regions;
};

/// Catalog text format, one record per line ('#' starts a comment):
///   plane <name>
///   region <id> <s> <t> <config>
///   anchor <id> <s> <t>
inline RegionCatalog parse_catalog(std::istream& in) {
  RegionCatalog cat;
  std::map<int, std::size_t> index;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidArgument, "catalog line " + std::to_string(lineno) + ": " + why);
  };
  auto rat = [&](const std::string& tok) {
    auto v = parse_rational(tok);
    if (!v) fail("bad rational '" + tok + "'");
    return *v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "plane") {
      std::string name;
      ls >> name;
      cat.plane = parse_plane(name);
    } else if (kw == "region") {
      RegionRecord r;
      std::string s, t;
      if (!(ls >> r.id >> s >> t >> r.config)) fail("expected: region <id> <s> <t> <config>");
      r.sample = {rat(s), rat(t)};
      index[r.id] = cat.regions.size();
      cat.regions.push_back(std::move(r));
    } else if (kw == "anchor") {
      int id;
      std::string s, t;
      if (!(ls >> id >> s >> t)) fail("expected: anchor <id> <s> <t>");
      auto it = index.find(id);
      if (it == index.end()) fail("anchor for unknown region " + std::to_string(id));
      cat.regions[it->second].anchors.push_back({rat(s), rat(t)});
    } else {
      fail("unknown record '" + kw + "'");
    }
  }
  return cat;
}

inline void write_catalog(std::ostream& out, const RegionCatalog& cat) {
  out << "plane " << plane_name(cat.plane) << "\n";
  for (const auto& r : cat.regions) {
    out << "region " << r.id << " " << to_string(r.sample.first) << " " << to_string(r.sample.second) << " "
        << r.config << "\n";
    for (const auto& a : r.anchors)
      out << "anchor " << r.id << " " << to_string(a.first) << " " << to_string(a.second) << "\n";
  }
}

/// UMBILIC_FIXTURE_DIR if set, else the directory configured at build time.
inline std::string fixture_dir() {
  if (const char* env = std::getenv("UMBILIC_FIXTURE_DIR"); env && *env) return env;
  return UMBILIC_DEFAULT_FIXTURE_DIR;
}

inline std::string catalog_path(StrataPlane plane, const std::string& dir) {
  return dir + "/regions_" + plane_name(plane) + ".txt";
}

inline RegionCatalog load_catalog(StrataPlane plane, const std::string& dir = fixture_dir()) {
  std::string path = catalog_path(plane, dir);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open region catalog " + path);
  RegionCatalog cat = parse_catalog(in);
  if (cat.plane != plane) throw Error(ErrorCode::InvalidArgument, path + " describes another plane");
  return cat;
}

namespace detail {

/// g(a + lambda (b - a)) as a polynomial in lambda.
inline UPoly restrict_to_segment(const JetPoly& g, const PlanePoint& a, const PlanePoint& b) {
  UPoly s({a.first, b.first - a.first}), t({a.second, b.second - a.second});
  UPoly out;
  for (const auto& [m, c] : g.terms()) {
    UPoly term({c});
    for (int k = 0; k < m.i; ++k) term = term * s;
    for (int k = 0; k < m.j; ++k) term = term * t;
    out = out + term;
  }
  return out;
}

/// True when no curve meets the closed segment from a to b.
inline bool segment_clear(const std::vector<StrataCurve>& curves, const PlanePoint& a, const PlanePoint& b) {
  for (const auto& c : curves) {
    UPoly r = restrict_to_segment(c.poly, a, b);
    if (r.is_zero()) return false;
    if (is_zero(r.eval(Scalar(0))) || is_zero(r.eval(Scalar(1)))) return false;
    if (r.degree() > 0 && count_real_roots(r, 0, 1) > 0) return false;
  }
  return true;
}

inline Scalar eval_st(const JetPoly& g, const Scalar& s, const Scalar& t) {
  Scalar acc = 0;
  for (const auto& [m, c] : g.terms()) acc += c * pow(s, m.i) * pow(t, m.j);
  return acc;
}

inline Interval eval_st(const JetPoly& g, const Interval& s, const Interval& t) {
  Interval acc(Scalar(0));
  for (const auto& [m, c] : g.terms()) {
    Interval term(c);
    for (int k = 0; k < m.i; ++k) term = term * s;
    for (int k = 0; k < m.j; ++k) term = term * t;
    acc = acc + term;
  }
  return acc;
}

}  // namespace detail

struct StratumLabel {
  StrataPlane plane = StrataPlane::Beta;
  int region_id = -1;  ///< -1 on a curve or when no catalog region is reachable
  std::vector<StratumCurve> on_curves;
  ConfigLabel predicted_config;
  std::string predicted;  ///< textual form of the predicted configuration
  bool mult_one = true;
  /// Real directions where phi and alpha vanish together.
  int common_roots = 0;
  /// Interval input whose enclosure meets a curve: on_curves cannot be decided.
  bool undetermined = false;
};

/// Region of an off-curve point: the first anchor (nearest first) joined to
/// the point by a segment that meets no curve.
inline int locate_region(const RegionCatalog& cat, const std::vector<StrataCurve>& curves, const PlanePoint& p) {
  struct Cand {
    Scalar d2;
    int id;
    const PlanePoint* q;
  };
  std::vector<Cand> cands;
  for (const auto& r : cat.regions) {
    auto add = [&](const PlanePoint& q) {
      Scalar ds = q.first - p.first, dt = q.second - p.second;
      cands.push_back({ds * ds + dt * dt, r.id, &q});
    };
    add(r.sample);
    for (const auto& a : r.anchors) add(a);
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d2 < b.d2; });
  for (const auto& c : cands)
    if (detail::segment_clear(curves, p, *c.q)) return c.id;
  return -1;
}

/// Number of distinct real directions (p = oo included) where phi and alpha vanish together.
inline int common_phi_alpha_roots(const BdeGerm& w) {
  PhiAlpha pa = phi_alpha(w);
  int n = 0;
  if (!pa.phi.is_zero() && !pa.alpha.is_zero()) {
    UPoly g = gcd(pa.phi, pa.alpha);
    n = static_cast<int>(isolate_real_roots(g).size());
  } else {
    n = static_cast<int>(isolate_real_roots(pa.phi.is_zero() ? pa.alpha : pa.phi).size());
  }
  if (is_zero(pa.phi_inf.coeff(0)) && is_zero(pa.alpha_inf.coeff(0))) ++n;
  return n;
}

inline StratumLabel stratify(const RegionCatalog& cat, const Scalar& s, const Scalar& t) {
  StratumLabel out;
  out.plane = cat.plane;
  auto curves = strata_curves(cat.plane);
  auto mark = [&](StratumCurve k) {
    if (std::find(out.on_curves.begin(), out.on_curves.end(), k) == out.on_curves.end()) out.on_curves.push_back(k);
  };
  bool on_curve = false;
  for (const auto& c : curves)
    if (is_zero(detail::eval_st(c.poly, s, t))) {
      on_curve = true;
      mark(c.kind);
      if (c.multiplicity_curve) out.mult_one = false;
    }
  BdeGerm jet = strata_one_jet(cat.plane, s, t);
  out.common_roots = common_phi_alpha_roots(jet);
  // In case (iii) phi and alpha share a root everywhere, so this is not a curve.
  if (out.common_roots > 0) mark(StratumCurve::PhiAlphaCommonRoot);
  out.predicted_config = classify_config(jet);
  if (!on_curve) {
    out.region_id = locate_region(cat, curves, {s, t});
    for (const auto& r : cat.regions)
      if (r.id == out.region_id) out.predicted = r.config;
  }
  if (out.predicted.empty()) out.predicted = out.predicted_config.to_string();
  if (out.predicted_config.to_string() != out.predicted) {
    // The catalog is the reference for open regions; keep its label.
    ConfigLabel c;
    c.reason = "catalog label " + out.predicted + " differs from the 1-jet analysis";
    out.predicted_config = c;
  }
  return out;
}

/// Interval version: curves whose enclosure contains 0 make the answer
/// undetermined; otherwise the box lies in one open region.
inline StratumLabel stratify(const RegionCatalog& cat, const Interval& s, const Interval& t) {
  if (s.exact() && t.exact()) return stratify(cat, s.lo, t.lo);
  auto curves = strata_curves(cat.plane);
  StratumLabel out;
  out.plane = cat.plane;
  for (const auto& c : curves)
    if (detail::eval_st(c.poly, s, t).contains_zero()) {
      out.undetermined = true;
      if (c.multiplicity_curve) out.mult_one = false;
    }
  if (out.undetermined) {
    out.predicted = "undetermined";
    return out;
  }
  return stratify(cat, s.mid(), t.mid());
}

inline const RegionCatalog& default_catalog(StrataPlane plane) {
  static std::map<StrataPlane, RegionCatalog> cache;
  auto it = cache.find(plane);
  if (it == cache.end()) it = cache.emplace(plane, load_catalog(plane)).first;
  return it->second;
}

inline StratumLabel stratify_beta(const Scalar& s, const Scalar& t) {
  return stratify(default_catalog(StrataPlane::Beta), s, t);
}

inline StratumLabel stratify_timelike(const Scalar& s, const Scalar& t, CubicFormTag form) {
  StrataPlane plane = form == CubicFormTag::I        ? StrataPlane::TimelikeI
                      : form == CubicFormTag::IIIPlus ? StrataPlane::TimelikeIIIPlus
                      : form == CubicFormTag::IIIMinus
                          ? StrataPlane::TimelikeIIIMinus
                          : throw Error(ErrorCode::InvalidArgument, "stratification exists for forms i and iii only");
  return stratify(default_catalog(plane), s, t);
}

struct CatalogBuildStats {
  int grid_points = 0;
  int on_curve = 0;
  /// Grid points whose own 1-jet configuration differs from their region's.
  int inconsistent = 0;
};

/// Builds a catalog by joining the points of a square grid into components
/// through curve-free segments between neighbours. Each component becomes a
/// region; its sample is its most interior grid point.
inline RegionCatalog build_catalog(StrataPlane plane, const Scalar& lo, const Scalar& hi, int n,
                                   CatalogBuildStats* stats = nullptr) {
  auto curves = strata_curves(plane);
  Scalar step = (hi - lo) / n;
  int side = n + 1;
  auto at = [&](int i, int j) { return PlanePoint{lo + step * i, lo + step * j}; };
  std::vector<char> valid(side * side, 1);
  CatalogBuildStats st;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      ++st.grid_points;
      auto p = at(i, j);
      for (const auto& c : curves)
        if (is_zero(detail::eval_st(c.poly, p.first, p.second))) valid[i * side + j] = 0;
      if (!valid[i * side + j]) ++st.on_curve;
    }
  std::vector<int> parent(side * side);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      int k = i * side + j;
      if (!valid[k]) continue;
      if (i + 1 < side && valid[k + side] && detail::segment_clear(curves, at(i, j), at(i + 1, j)))
        parent[find(k)] = find(k + side);
      if (j + 1 < side && valid[k + 1] && detail::segment_clear(curves, at(i, j), at(i, j + 1)))
        parent[find(k)] = find(k + 1);
    }
  std::map<int, std::vector<int>> comps;
  std::vector<int> order;
  for (int k = 0; k < side * side; ++k) {
    if (!valid[k]) continue;
    int r = find(k);
    if (!comps.count(r)) order.push_back(r);
    comps[r].push_back(k);
  }
  RegionCatalog cat;
  cat.plane = plane;
  int next_id = 0;
  for (int root : order) {
    const auto& members = comps[root];
    // Depth: members of the component inside the 5x5 window around a point.
    int best = members.front(), best_depth = -1;
    long sx = 0, sy = 0;
    for (int k : members) sx += k / side, sy += k % side;
    double cx = double(sx) / members.size(), cy = double(sy) / members.size();
    double best_dist = 0;
    for (int k : members) {
      int i = k / side, j = k % side, depth = 0;
      for (int di = -2; di <= 2; ++di)
        for (int dj = -2; dj <= 2; ++dj) {
          int a = i + di, b = j + dj;
          if (a >= 0 && a < side && b >= 0 && b < side && valid[a * side + b] && find(a * side + b) == root) ++depth;
        }
      double dist = (i - cx) * (i - cx) + (j - cy) * (j - cy);
      if (depth > best_depth || (depth == best_depth && dist < best_dist)) {
        best = k;
        best_depth = depth;
        best_dist = dist;
      }
    }
    RegionRecord rec;
    rec.id = next_id++;
    rec.sample = at(best / side, best % side);
    rec.config = classify_config(strata_one_jet(plane, rec.sample.first, rec.sample.second)).to_string();
    for (int k : members) {
      int i = k / side, j = k % side;
      if (k != best && (members.size() <= 12 || (i % 4 == 0 && j % 4 == 0))) rec.anchors.push_back(at(i, j));
      if (stats) {
        auto p = at(i, j);
        if (classify_config(strata_one_jet(plane, p.first, p.second)).to_string() != rec.config) ++st.inconsistent;
      }
    }
    cat.regions.push_back(std::move(rec));
  }
  if (stats) *stats = st;
  return cat;
}

}  // namespace umbilic
