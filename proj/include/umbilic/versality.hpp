// Distance-squared functions at an umbilic, D4 recognition, R+-versality of
// the distance-squared family and transversality of the Monge-Taylor map.
#pragma once

#include "umbilic/analysis.hpp"
#include "umbilic/linalg.hpp"
#include "umbilic/surface.hpp"

#include <array>
#include <optional>

namespace umbilic {

using Point3 = std::array<Scalar, 3>;

/// d^2_v(x) = <x - v, x - v> along the patch, as a jet of the given order.
inline JetPoly distance_squared_jet(const MongePatch& p, const Point3& v, int order) {
  PatchFrame fr = patch_frame(p);
  Vec3 d;
  for (int i = 0; i < 3; ++i) d[i] = (fr.x[i] - JetPoly::constant(v[i], JetPoly::kExact)).truncated(order);
  return inner(d, d, p.ambient).truncated(order);
}

inline JetPoly distance_squared_jet(const MongePatch& p, const Point3& v) {
  return distance_squared_jet(p, v, p.order);
}

/// The centre v0 at which d^2_v0 has vanishing 1- and 2-jets, if unique.
/// The conditions are linear in v since x(0) = 0; there is none when the
/// umbilic is flat.
inline std::optional<Point3> focal_centre(const MongePatch& p) {
  PatchFrame fr = patch_frame(p);
  JetPoly xx = inner(fr.x, fr.x, p.ambient).truncated(2);
  // d^2_v - |v|^2 = <x, x> - 2 <x, v>; <x, v> = sum eps_i x_i v_i.
  Scalar eps[3] = {1, 1, p.ambient == Ambient::Euclidean ? Scalar(1) : Scalar(-1)};
  static const std::array<std::pair<int, int>, 5> mons{{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}};
  Matrix a;
  std::vector<Scalar> b;
  for (auto [i, j] : mons) {
    std::vector<Scalar> row(3);
    for (int k = 0; k < 3; ++k) row[k] = 2 * eps[k] * fr.x[k].coeff(i, j);
    a.push_back(row);
    b.push_back(xx.coeff(i, j));
  }
  auto sol = solve_unique(a, b);
  if (!sol) return std::nullopt;
  return Point3{(*sol)[0], (*sol)[1], (*sol)[2]};
}

struct VersalityResult {
  std::optional<Point3> centre;
  JetPoly cubic{JetPoly::kExact};  ///< j^3 d^2 at the centre
  bool has_D4 = false;
  /// Unset when there is no focal centre (flat umbilic).
  std::optional<bool> versal;
  int rank = 0;
};

/// Discriminant of the binary cubic a u^3 + b u^2 v + c u v^2 + d v^3.
inline Scalar cubic_discriminant(const JetPoly& c) {
  Scalar a = c.coeff(3, 0), b = c.coeff(2, 1), cc = c.coeff(1, 2), d = c.coeff(0, 3);
  return b * b * cc * cc - 4 * a * cc * cc * cc - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * cc * d;
}

/// Monomial basis of the 3-jet space in the order 1, x, z, x^2, xz, z^2,
/// x^3, x^2 z, x z^2, z^3 (x, z being the two patch variables).
inline const std::array<std::pair<int, int>, 10>& jet3_basis() {
  static const std::array<std::pair<int, int>, 10> b{
      {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}};
  return b;
}

inline std::vector<Scalar> jet3_row(const JetPoly& g) {
  std::vector<Scalar> row;
  for (auto [i, j] : jet3_basis()) row.push_back(g.coeff(i, j));
  return row;
}

/// D4 test on j^3 d^2_v0 and the rank test
///   O_2 <d_x d^2, d_z d^2> + R{1, d^2_a, d^2_b, d^2_c} = O_2   (mod m^4).
inline VersalityResult d4_and_versality(const MongePatch& p) {
  if (detect_umbilic(p) == CausalType::NotUmbilic) throw Error(ErrorCode::NotUmbilic, "origin is not an umbilic");
  VersalityResult out;
  out.centre = focal_centre(p);
  if (!out.centre) return out;
  JetPoly d2 = distance_squared_jet(p, *out.centre, 3);
  out.cubic = d2.homogeneous_part(3).with_order(JetPoly::kExact);
  out.has_D4 = !out.cubic.is_zero() && !is_zero(cubic_discriminant(out.cubic));

  Matrix rows;
  rows.push_back(jet3_row(JetPoly::constant(1, 3)));
  PatchFrame fr = patch_frame(p);
  Scalar eps[3] = {1, 1, p.ambient == Ambient::Euclidean ? Scalar(1) : Scalar(-1)};
  // d/dv_k of d^2 at v0 is -2 eps_k (x_k - v0_k).
  for (int k = 0; k < 3; ++k)
    rows.push_back(jet3_row((fr.x[k] - JetPoly::constant((*out.centre)[k], JetPoly::kExact)).truncated(3) *
                            (-2 * eps[k])));
  // Products with degree <= 3 monomials need the gradient to order 3.
  JetPoly d4 = distance_squared_jet(p, *out.centre, 4);
  JetPoly gx = d4.derive(Var::U), gz = d4.derive(Var::V);
  for (auto [i, j] : jet3_basis()) {
    JetPoly m = JetPoly::monomial(1, i, j, 3);
    rows.push_back(jet3_row((m * gx).truncated(3)));
    rows.push_back(jet3_row((m * gz).truncated(3)));
  }
  out.rank = rank(rows);
  out.versal = out.rank == 10;
  return out;
}

/// Transversality of the Monge-Taylor map to the umbilic stratum.
///
/// Spacelike or timelike umbilic on a graph with j^1 f = 0: the tangent
/// vectors v1, v2 of the image of the map are paired with the 1-forms
/// defining the stratum (a21 = 0 and a20 -+ a22 = 0). Lightlike umbilic on a
/// z-graph: the fixed-frame stratum equations are pulled back along the map
/// and their differentials must have rank 2.
inline bool monge_taylor_transversality(const MongePatch& p, int k = 3) {
  CausalType type = detect_umbilic(p);
  if (type == CausalType::NotUmbilic) throw Error(ErrorCode::NotUmbilic, "origin is not an umbilic");
  const JetPoly& f = p.f;
  JetPoly fx = f.derive(Var::U), fy = f.derive(Var::V);
  JetPoly fxx = fx.derive(Var::U), fxy = fx.derive(Var::V), fyy = fy.derive(Var::V);
  if (type == CausalType::Lightlike) {
    if (p.ambient != Ambient::Minkowski || p.axis != GraphAxis::Z)
      throw Error(ErrorCode::UnsupportedCausalType, "lightlike frame is set up for z-graphs in Minkowski space");
    // Coefficients of j^2 f_p at the moving point p, as functions of p.
    JetPoly a10 = fx, a01 = fy, a20 = fxx * rational(1, 2), a21 = fxy, a22 = fyy * rational(1, 2);
    JetPoly one = JetPoly::constant(1, JetPoly::kExact);
    std::array<JetPoly, 3> g{(a01 * a01 - one) * a21 - a10 * a01 * a22 * 2,
                             (a01 * a01 - one) * a20 - (a10 * a10 - one) * a22,
                             (a10 * a10 - one) * a21 - a10 * a01 * a20 * 2};
    Matrix jac;
    for (const auto& gi : g) jac.push_back({gi.coeff(1, 0), gi.coeff(0, 1)});
    return rank(jac) == 2;
  }
  if (!is_zero(f.coeff(1, 0)) || !is_zero(f.coeff(0, 1)))
    throw Error(ErrorCode::UnsupportedCausalType, "Monge-Taylor chart needs a graph tangent to the coordinate plane");
  Scalar rxx = fxx.constant_term(), rxy = fxy.constant_term(), ryy = fyy.constant_term();
  JetPoly x = JetPoly::u(JetPoly::kExact), y = JetPoly::v(JetPoly::kExact);
  JetPoly v1, v2;
  bool lorentz = p.axis == GraphAxis::Y && p.ambient == Ambient::Minkowski;
  if (!lorentz) {
    v1 = x * (-rxx) - y * rxy + fx - fx * f * rxx - fy * f * rxy;
    v2 = x * (-rxy) - y * ryy + fy - fx * f * rxy - fy * f * ryy;
  } else {
    v1 = x * (-rxx) - y * rxy + fx - fx * f * rxx + fy * f * rxy;
    v2 = x * (-rxy) - y * ryy + fy + fx * f * rxy + fy * f * ryy;
  }
  v1 = v1.truncated(k);
  v2 = v2.truncated(k);
  // a20 + a22 on a timelike (Lorentzian) patch, a20 - a22 on a spacelike one.
  Scalar s = lorentz ? Scalar(1) : Scalar(-1);
  auto eta1 = [](const JetPoly& v) { return v.coeff(1, 1); };
  auto eta2 = [&](const JetPoly& v) { return v.coeff(2, 0) + s * v.coeff(0, 2); };
  return !is_zero(eta1(v1) * eta2(v2) - eta1(v2) * eta2(v1));
}

/// The four characterisations of a multiplicity-one umbilic side by side.
struct EquivalencePanel {
  bool mu_one = false;
  bool morse = false;               ///< discriminant (LD when lightlike) is A1
  std::optional<bool> versal;       ///< only when the distance squared has a D4
  std::optional<bool> transverse;   ///< Monge-Taylor map transverse to the stratum
  bool agree() const {
    return morse == mu_one && (!versal || *versal == mu_one) && (!transverse || *transverse == mu_one);
  }
};

inline EquivalencePanel equivalence_panel(const MongePatch& p, const UmbilicReport& r) {
  EquivalencePanel e;
  e.mu_one = r.m_u && r.m_u->finite() && r.m_u->value == 1;
  const auto& cls = r.causal_type == CausalType::Lightlike ? r.ld_class : r.discriminant_class;
  e.morse = cls && cls->tag == SingTag::A && cls->k == 1;
  try {
    auto v = d4_and_versality(p);
    if (v.has_D4) e.versal = v.versal;
  } catch (const Error&) {
  }
  try {
    e.transverse = monge_taylor_transversality(p);
  } catch (const Error&) {
  }
  return e;
}

inline EquivalencePanel equivalence_panel(const MongePatch& p) { return equivalence_panel(p, analyze_umbilic(p)); }

}  // namespace umbilic
