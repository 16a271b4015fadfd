// Monge patches in Euclidean 3-space and Minkowski 3-space, their fundamental
// forms, the binary differential equation of the lines of principal curvature
// and the associated special curves.
#pragma once

#include "umbilic/errors.hpp"
#include "umbilic/jet.hpp"

#include <array>
#include <string>

namespace umbilic {

enum class Ambient { Euclidean, Minkowski };

/// Which ambient coordinate is the graph of f. Z: (u, v, f(u, v)), the
/// patch variables are (x, y). Y: (u, f(u, v), v), the variables are (x, z).
enum class GraphAxis { Z, Y };

inline const char* ambient_name(Ambient a) { return a == Ambient::Euclidean ? "euclidean" : "minkowski"; }
inline const char* axis_name(GraphAxis g) { return g == GraphAxis::Z ? "z" : "y"; }

/// A graph-type surface germ. f is an untruncated polynomial with f(0) = 0;
/// `order` is the working truncation order used by the analyses.
struct MongePatch {
  Ambient ambient = Ambient::Minkowski;
  GraphAxis axis = GraphAxis::Z;
  JetPoly f{JetPoly::kExact};
  int order = kDefaultOrder;
  std::string name;

  MongePatch() = default;
  MongePatch(Ambient a, GraphAxis g, const JetPoly& poly, int working_order = kDefaultOrder, std::string label = {})
      : ambient(a), axis(g), f(poly.with_order(JetPoly::kExact)), order(working_order), name(std::move(label)) {
    if (!is_zero(f.constant_term()))
      throw Error(ErrorCode::NotAtOrigin, "graph function must vanish at the origin");
    if (order < 2) throw Error(ErrorCode::InvalidArgument, "working order must be at least 2");
  }

  /// Names of the two patch variables, e.g. {"x", "y"} for a z-graph.
  std::array<const char*, 2> variables() const {
    return axis == GraphAxis::Z ? std::array<const char*, 2>{"x", "y"} : std::array<const char*, 2>{"x", "z"};
  }

  friend bool operator==(const MongePatch& a, const MongePatch& b) {
    return a.ambient == b.ambient && a.axis == b.axis && a.f == b.f && a.order == b.order;
  }
};

/// Vector-valued jet (three coordinates).
using Vec3 = std::array<JetPoly, 3>;

inline JetPoly inner(const Vec3& a, const Vec3& b, Ambient amb) {
  JetPoly r = a[0] * b[0] + a[1] * b[1];
  return amb == Ambient::Euclidean ? r + a[2] * b[2] : r - a[2] * b[2];
}

/// Determinant of the matrix with columns a, b, c.
inline JetPoly det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) +
         c[0] * (a[1] * b[2] - a[2] * b[1]);
}

/// Cross product characterised by <a x b, c> = det(a, b, c) for the ambient
/// inner product; in Minkowski space the last component changes sign.
inline Vec3 cross(const Vec3& a, const Vec3& b, Ambient amb) {
  Vec3 r{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  if (amb == Ambient::Minkowski) r[2] = -r[2];
  return r;
}

/// Parametrisation x(u, v) of the patch and its partial derivatives.
struct PatchFrame {
  Vec3 x, xu, xv, xuu, xuv, xvv;
};

inline PatchFrame patch_frame(const MongePatch& p) {
  const int E = JetPoly::kExact;
  JetPoly u = JetPoly::u(E), v = JetPoly::v(E), zero(E), one = JetPoly::constant(1, E);
  const JetPoly& f = p.f;
  JetPoly fu = f.derive(Var::U), fv = f.derive(Var::V);
  JetPoly fuu = fu.derive(Var::U), fuv = fu.derive(Var::V), fvv = fv.derive(Var::V);
  PatchFrame fr;
  if (p.axis == GraphAxis::Z) {
    fr.x = {u, v, f};
    fr.xu = {one, zero, fu};
    fr.xv = {zero, one, fv};
    fr.xuu = {zero, zero, fuu};
    fr.xuv = {zero, zero, fuv};
    fr.xvv = {zero, zero, fvv};
  } else {
    fr.x = {u, f, v};
    fr.xu = {one, fu, zero};
    fr.xv = {zero, fv, one};
    fr.xuu = {zero, fuu, zero};
    fr.xuv = {zero, fuv, zero};
    fr.xvv = {zero, fvv, zero};
  }
  return fr;
}

/// E, F, G and the unnormalised second fundamental form coefficients
/// lbar = <x_u x x_v, x_uu> etc.
struct FundamentalForms {
  JetPoly E, F, G, lbar, mbar, nbar;
};

inline FundamentalForms fundamental_forms_exact(const MongePatch& p) {
  PatchFrame fr = patch_frame(p);
  FundamentalForms ff;
  ff.E = inner(fr.xu, fr.xu, p.ambient);
  ff.F = inner(fr.xu, fr.xv, p.ambient);
  ff.G = inner(fr.xv, fr.xv, p.ambient);
  Vec3 nrm = cross(fr.xu, fr.xv, p.ambient);
  ff.lbar = inner(nrm, fr.xuu, p.ambient);
  ff.mbar = inner(nrm, fr.xuv, p.ambient);
  ff.nbar = inner(nrm, fr.xvv, p.ambient);
  return ff;
}

inline FundamentalForms fundamental_forms(const MongePatch& p, int order) {
  FundamentalForms ff = fundamental_forms_exact(p);
  for (JetPoly* j : {&ff.E, &ff.F, &ff.G, &ff.lbar, &ff.mbar, &ff.nbar}) *j = j->truncated(order);
  return ff;
}

inline FundamentalForms fundamental_forms(const MongePatch& p) { return fundamental_forms(p, p.order); }

/// Coefficients of a dv^2 + b du dv + c du^2 = 0.
struct BdeGerm {
  JetPoly a, b, c;

  int order() const { return std::min({a.order(), b.order(), c.order()}); }
  BdeGerm truncated(int n) const { return {a.truncated(n), b.truncated(n), c.truncated(n)}; }
  JetPoly discriminant() const { return b * b - Scalar(4) * a * c; }
  bool vanishes_at_origin() const {
    return is_zero(a.constant_term()) && is_zero(b.constant_term()) && is_zero(c.constant_term());
  }
  friend bool operator==(const BdeGerm& x, const BdeGerm& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

inline BdeGerm bde_from_forms(const FundamentalForms& ff) {
  return {ff.F * ff.nbar - ff.G * ff.mbar, ff.E * ff.nbar - ff.G * ff.lbar, ff.E * ff.mbar - ff.F * ff.lbar};
}

/// The principal-curvature BDE (a, b, c) = (F nbar - G mbar, E nbar - G lbar,
/// E mbar - F lbar) as exact polynomials.
inline BdeGerm principal_bde_exact(const MongePatch& p) { return bde_from_forms(fundamental_forms_exact(p)); }

inline BdeGerm principal_bde(const MongePatch& p, int order) { return principal_bde_exact(p).truncated(order); }
inline BdeGerm principal_bde(const MongePatch& p) { return principal_bde(p, p.order); }

struct SpecialCurves {
  JetPoly ld;            ///< F^2 - E G
  JetPoly lpl;           ///< discriminant read on the Lorentzian side
  JetPoly discriminant;  ///< b^2 - 4 a c
};

inline SpecialCurves special_curves(const MongePatch& p, int order) {
  FundamentalForms ff = fundamental_forms_exact(p);
  BdeGerm w = bde_from_forms(ff);
  SpecialCurves sc;
  sc.ld = (ff.F * ff.F - ff.E * ff.G).truncated(order);
  sc.discriminant = w.discriminant().truncated(order);
  sc.lpl = sc.discriminant;
  return sc;
}

inline SpecialCurves special_curves(const MongePatch& p) { return special_curves(p, p.order); }

}  // namespace umbilic
