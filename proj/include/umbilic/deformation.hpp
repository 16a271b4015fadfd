// Splitting of a degenerate umbilic under perturbation: complex and real
// counts of the zeros of the BDE coefficient pair in a small polydisk.
#pragma once

#include "umbilic/analysis.hpp"
#include "umbilic/linalg.hpp"
#include "umbilic/normal_forms.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <sstream>
#include <thread>

namespace umbilic {

using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

namespace detail {

/// Coefficients of f as a polynomial in v over Q[u].
inline std::vector<UPoly> v_coefficients(const JetPoly& f) {
  int n = -1;
  for (const auto& [m, c] : f.terms()) n = std::max(n, m.j);
  std::vector<std::vector<Scalar>> raw(n + 1);
  for (const auto& [m, c] : f.terms()) {
    auto& r = raw[m.j];
    if (static_cast<int>(r.size()) <= m.i) r.resize(m.i + 1, Scalar(0));
    r[m.i] = c;
  }
  std::vector<UPoly> out;
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

inline Scalar determinant(Matrix m) {
  const std::size_t n = m.size();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(m[piv][col])) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col])) continue;
      Scalar k = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= k * m[col][c];
    }
  }
  return det;
}

/// Sylvester determinant with the formal degrees len(p)-1, len(q)-1, so it
/// commutes with specialising u.
inline Scalar sylvester(const std::vector<Scalar>& p, const std::vector<Scalar>& q) {
  const std::size_t m = p.size() - 1, n = q.size() - 1, N = m + n;
  if (N == 0) return 1;
  Matrix s(N, std::vector<Scalar>(N, Scalar(0)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = p[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = q[n - k];
  return determinant(std::move(s));
}

/// Interpolating polynomial through (x_k, y_k) by divided differences.
inline UPoly interpolate(const std::vector<Scalar>& x, std::vector<Scalar> y) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k) y[k] = (y[k] - y[k - 1]) / (x[k] - x[k - level]);
  UPoly r;
  for (std::size_t k = n; k-- > 0;) r = r * UPoly({-x[k], Scalar(1)}) + UPoly::constant(y[k]);
  return r;
}

inline int total_degree(const JetPoly& f) {
  int d = 0;
  for (const auto& [m, c] : f.terms()) d = std::max(d, m.degree());
  return d;
}

}  // namespace detail

/// Res_v(P, Q) in Q[u], by interpolating Sylvester determinants at
/// deg P * deg Q + 1 integer abscissae.
inline UPoly resultant_v(const JetPoly& P, const JetPoly& Q) {
  auto pc = detail::v_coefficients(P), qc = detail::v_coefficients(Q);
  if (pc.empty() || qc.empty()) return {};
  const int D = detail::total_degree(P) * detail::total_degree(Q);
  std::vector<Scalar> xs, ys;
  for (int k = 0; k <= D; ++k) {
    Scalar u = k - D / 2;
    std::vector<Scalar> p, q;
    for (const auto& c : pc) p.push_back(c.eval(u));
    for (const auto& c : qc) q.push_back(c.eval(u));
    xs.push_back(u);
    ys.push_back(detail::sylvester(p, q));
  }
  return detail::interpolate(xs, std::move(ys));
}

namespace detail {

using IntPoly = std::vector<Integer>;

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly primitive(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  Integer g = 0;
  for (const auto& c : p) g = gcd(g, c);
  if (p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

inline IntPoly to_int_poly(const UPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, denominator(c));
  IntPoly out;
  for (const auto& c : p.coeffs()) out.push_back(numerator(c) * (l / denominator(c)));
  return primitive(std::move(out));
}

inline UPoly to_upoly(const IntPoly& p) {
  std::vector<Scalar> c;
  for (const auto& a : p) c.emplace_back(a);
  return UPoly(std::move(c));
}

/// Pseudo-remainder of a by b, made primitive.
inline IntPoly primitive_prem(IntPoly a, const IntPoly& b) {
  const std::size_t n = b.size() - 1;
  const Integer& lb = b.back();
  while (a.size() > n) {
    Integer la = a.back();
    std::size_t shift = a.size() - 1 - n;
    Integer g = gcd(la, lb);
    Integer fa = lb / g, fb = la / g;
    for (auto& c : a) c *= fa;
    for (std::size_t k = 0; k <= n; ++k) a[shift + k] -= fb * b[k];
    a.pop_back();
    trim(a);
  }
  return primitive(std::move(a));
}

}  // namespace detail

/// Monic gcd over Q, by a primitive remainder sequence over Z.
inline UPoly monic_gcd(const UPoly& a0, const UPoly& b0) {
  detail::IntPoly a = detail::to_int_poly(a0), b = detail::to_int_poly(b0);
  while (!b.empty()) {
    detail::IntPoly r = detail::primitive_prem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return detail::to_upoly(a).monic();
}

/// Yun's algorithm: p = c * prod_k factors[k]^(k+1), each factor squarefree
/// and pairwise coprime.
inline std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  std::vector<UPoly> out;
  if (p.degree() <= 0) return out;
  UPoly dp = p.derivative();
  UPoly a = monic_gcd(p, dp);
  UPoly b = p.divmod(a).first;
  UPoly c = dp.divmod(a).first;
  UPoly d = c - b.derivative();
  while (b.degree() > 0) {
    a = monic_gcd(b, d);
    out.push_back(a);
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() <= 0) out.pop_back();
  return out;
}

namespace detail {

inline Complex to_complex(const Scalar& s) {
  return Complex(Real(numerator(s).str()) / Real(denominator(s).str()));
}

inline Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
  return r;
}

}  // namespace detail

namespace detail {

/// Aberth-Ehrlich sweeps until every correction is below eps relative to
/// its root. Returns false if max_it is reached first.
template <class C, class R>
bool aberth(const std::vector<C>& c, std::vector<C>& z, const R& eps, int max_it) {
  const int n = static_cast<int>(z.size());
  std::vector<C> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * R(static_cast<long>(k)));
  auto horner = [](const std::vector<C>& a, const C& x) {
    C r(0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + *it;
    return r;
  };
  std::vector<bool> frozen(n, false);
  for (int it = 0; it < max_it; ++it) {
    bool done = true;
    for (int k = 0; k < n; ++k) {
      if (frozen[k]) continue;
      C p = horner(c, z[k]);
      if (p == C(0)) {
        frozen[k] = true;
        continue;
      }
      C ratio = p / horner(dc, z[k]);
      C sum(0);
      for (int j = 0; j < n; ++j)
        if (j != k) sum += C(R(1)) / (z[k] - z[j]);
      C w = ratio / (C(R(1)) - ratio * sum);
      z[k] -= w;
      using std::abs;
      R az = abs(z[k]);
      if (R(abs(w)) > eps * (az > R(1) ? az : R(1)))
        done = false;
      else
        frozen[k] = true;
    }
    if (done) return true;
  }
  return false;
}

}  // namespace detail

/// All complex roots of c[0] + c[1] z + ...: Aberth iteration in long double,
/// then polished at full precision. Roots at zero are returned exactly.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
  while (!c.empty() && c.back() == Complex(0)) c.pop_back();
  std::vector<Complex> roots;
  std::size_t z0 = 0;
  while (z0 < c.size() && c[z0] == Complex(0)) ++z0;
  roots.assign(z0, Complex(0));
  c.erase(c.begin(), c.begin() + static_cast<long>(z0));
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return roots;

  using LC = std::complex<long double>;
  std::vector<LC> cl;
  for (const auto& a : c) cl.emplace_back(a.real().convert_to<long double>(), a.imag().convert_to<long double>());
  // initial guesses on a circle enclosing every root
  long double rad = 0;
  for (int k = 0; k < n; ++k) rad = std::max(rad, std::pow(std::abs(cl[k] / cl[n]), 1.0L / (n - k)));
  rad = rad == 0 ? 1 : 2 * rad;
  std::vector<LC> zl(n);
  for (int k = 0; k < n; ++k) zl[k] = std::polar(rad, 6.283185307179586476925L * k / n + 0.4L);
  detail::aberth(cl, zl, 64 * std::numeric_limits<long double>::epsilon(), 1000);

  std::vector<Complex> z;
  for (const auto& a : zl) z.emplace_back(Real(a.real()), Real(a.imag()));
  detail::aberth(c, z, Real(std::numeric_limits<Real>::epsilon() * 64), 200);
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

/// A zero of the coefficient pair: location, multiplicity of the cluster and
/// whether it is real.
struct ComplexZero {
  Complex u, v;
  int multiplicity = 1;
  bool real = false;
};

struct PairZeros {
  bool infinite = false;
  std::vector<ComplexZero> zeros;  ///< every zero with finite v
};

namespace detail {

inline Complex eval_complex(const JetPoly& f, const Complex& u, const Complex& v) {
  auto coeffs = v_coefficients(f);
  Complex r = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    std::vector<Complex> cu;
    for (const auto& a : it->coeffs()) cu.push_back(to_complex(a));
    r = r * v + horner(cu, u);
  }
  return r;
}

using ComplexBivariate = std::vector<std::vector<Complex>>;

inline ComplexBivariate to_complex(const std::vector<UPoly>& vc) {
  ComplexBivariate out;
  for (const auto& a : vc) {
    out.emplace_back();
    for (const auto& s : a.coeffs()) out.back().push_back(to_complex(s));
  }
  return out;
}

inline std::vector<Complex> specialise_u(const ComplexBivariate& vc, const Complex& u) {
  std::vector<Complex> out;
  for (const auto& cu : vc) out.push_back(horner(cu, u));
  return out;
}

inline Real scale_at(const std::vector<Complex>& c, const Complex& z) {
  Real s = 0, az = abs(z), p = 1;
  for (const auto& a : c) {
    s += abs(a) * p;
    p *= az;
  }
  return s;
}

inline Scalar to_scalar(const Real& x) {
  // exact binary value of x
  int e = 0;
  Real m = frexp(x, &e);
  m = ldexp(m, 180);
  Scalar r(Integer(m.convert_to<Integer>()));
  e -= 180;
  return e >= 0 ? r * pow(Scalar(2), static_cast<unsigned>(e)) : r / pow(Scalar(2), static_cast<unsigned>(-e));
}

/// True if the squarefree polynomial f changes sign on a tiny rational
/// bracket around x.
inline bool certify_real_root(const UPoly& f, const Real& x) {
  Real w = std::max(Real(1), Real(abs(x))) * Real("1e-30");
  int a = sign(f.eval(to_scalar(x - w))), b = sign(f.eval(to_scalar(x + w)));
  return a * b < 0 || a == 0 || b == 0;
}

inline JetPoly shear(const JetPoly& f, const Scalar& lambda) {
  // f(u' - lambda v, v)
  const int E = JetPoly::kExact;
  return compose(f, JetPoly::u(E) - JetPoly::v(E) * lambda, JetPoly::v(E));
}

/// Zeros of (P, Q) in projection u' = u + lambda v with |u'| <= window;
/// nullopt if the projection is not generic.
inline std::optional<PairZeros> pair_zeros_projected(const JetPoly& P0, const JetPoly& Q0, const Scalar& lambda,
                                                     const Real& window) {
  JetPoly P = is_zero(lambda) ? P0 : shear(P0, lambda), Q = is_zero(lambda) ? Q0 : shear(Q0, lambda);
  PairZeros out;
  // a constant leading coefficient in v keeps every zero at finite v, so
  // the multiplicities of the resultant's roots are the local ones
  auto pv = v_coefficients(P), qv = v_coefficients(Q);
  if (!pv.empty() && !qv.empty() && pv.back().degree() > 0 && qv.back().degree() > 0) return std::nullopt;
  UPoly R = resultant_v(P, Q);
  if (R.is_zero()) {
    out.infinite = true;
    return out;
  }
  auto pc = to_complex(pv), qc = to_complex(qv);
  auto factors = squarefree_decomposition(R);
  const Real tol = Real("1e-25");
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const UPoly& fac = factors[k];
    if (fac.degree() <= 0) continue;
    std::vector<Complex> fc;
    for (const auto& s : fac.coeffs()) fc.push_back(to_complex(s));
    std::vector<ComplexZero> found;
    for (const Complex& u : polynomial_roots(fc)) {
      if (abs(u) > window) continue;
      bool u_real = abs(u.imag()) <= tol * std::max(Real(1), Real(abs(u)));
      if (u_real && !certify_real_root(fac, u.real()))
        throw Error(ErrorCode::IllConditioned, "a numerically real root of the resultant has no exact sign change");
      // common v: roots of the lower-degree specialisation checked in the other
      auto ps = specialise_u(pc, u), qs = specialise_u(qc, u);
      while (!ps.empty() && abs(ps.back()) <= tol * scale_at(ps, Complex(1))) ps.pop_back();
      while (!qs.empty() && abs(qs.back()) <= tol * scale_at(qs, Complex(1))) qs.pop_back();
      bool swap = qs.size() < ps.size() && qs.size() > 1;
      if (ps.size() <= 1) swap = true;
      const auto& a = swap ? qs : ps;
      const auto& b = swap ? ps : qs;
      std::vector<Complex> common;
      for (const Complex& v : polynomial_roots(a)) {
        Real res = abs(horner(b, v)) / std::max(scale_at(b, v), Real("1e-300"));
        if (res > Real("1e-12")) continue;
        bool dup = false;
        for (const auto& w : common)
          if (abs(w - v) <= Real("1e-10") * std::max(Real(1), Real(abs(v)))) dup = true;
        if (!dup) common.push_back(v);
      }
      if (common.size() > 1) return std::nullopt;
      if (common.empty())
        throw Error(ErrorCode::IllConditioned, "no common root recovered above a root of the resultant");
      ComplexZero zr;
      zr.v = common[0];
      zr.u = u - Complex(to_complex(lambda)) * zr.v;
      zr.multiplicity = static_cast<int>(k) + 1;
      zr.real = u_real && abs(zr.v.imag()) <= Real("1e-20") * std::max(Real(1), Real(abs(zr.v)));
      if (zr.real) zr.u = Complex(zr.u.real()), zr.v = Complex(zr.v.real());
      found.push_back(zr);
    }
    out.zeros.insert(out.zeros.end(), found.begin(), found.end());
  }
  return out;
}

}  // namespace detail

/// Common zeros of P and Q with |u|, |v| <= window (and possibly some
/// further out), with multiplicities. The projection is sheared until it
/// separates the zeros.
inline PairZeros pair_zeros(const JetPoly& P, const JetPoly& Q, const Real& window) {
  for (Scalar lambda : {Scalar(0), rational(3, 7), rational(-5, 11), rational(7, 13), rational(-2, 3)}) {
    Real w = window * (1 + abs(detail::to_complex(lambda).real()));
    if (auto z = detail::pair_zeros_projected(P, Q, lambda, w)) return *z;
  }
  throw Error(ErrorCode::IllConditioned, "no separating projection found");
}

namespace detail {

inline Interval interval_pow(const Interval& x, int n) {
  Interval r(Scalar(1));
  for (int k = 0; k < n; ++k) r = r * x;
  if (n % 2 == 0 && r.lo < 0) r.lo = 0;
  return r;
}

inline Interval eval_box(const JetPoly& f, const Interval& u, const Interval& v) {
  Interval r(Scalar(0));
  for (const auto& [m, c] : f.terms()) r = r + Interval(c) * interval_pow(u, m.i) * interval_pow(v, m.j);
  return r;
}

}  // namespace detail

/// The coefficient pair for the first of E, F, G that has no zero on the
/// box [-r, r]^2 (interval evaluation).
struct SelectedPair {
  MetricBranch branch;
  JetPoly P, Q;
};

inline SelectedPair select_pair(const MongePatch& p, const Scalar& radius) {
  FundamentalForms ff = fundamental_forms_exact(p);
  BdeGerm w = bde_from_forms(ff);
  Interval box(-radius, radius);
  // in Euclidean space E = 1 + (first partial)^2 is positive everywhere
  if (p.ambient == Ambient::Euclidean || !detail::eval_box(ff.E, box, box).contains_zero())
    return {MetricBranch::E, w.b, w.c};
  if (!detail::eval_box(ff.F, box, box).contains_zero()) return {MetricBranch::F, w.a, w.c};
  if (!detail::eval_box(ff.G, box, box).contains_zero()) return {MetricBranch::G, w.a, w.b};
  throw Error(ErrorCode::BranchInvalid, "no metric coefficient is sign-definite on the disk of radius " + to_string(radius));
}

/// Zeros inside the polydisk |u|, |v| < r; IllConditioned if one sits on
/// the boundary.
inline std::vector<ComplexZero> zeros_in_polydisk(const PairZeros& z, const Scalar& radius) {
  Real r = detail::to_complex(radius).real();
  Real margin = r * Real("1e-6");
  std::vector<ComplexZero> out;
  for (const auto& zr : z.zeros) {
    Real au = abs(zr.u), av = abs(zr.v);
    if (abs(au - r) < margin || abs(av - r) < margin)
      throw Error(ErrorCode::IllConditioned, "a zero lies on the boundary of the disk of radius " + to_string(radius));
    if (au < r && av < r) out.push_back(zr);
  }
  return out;
}

/// The zeros of the selected coefficient pair inside the polydisk.
struct DiskZeros {
  SelectedPair pair;
  Scalar radius;
  bool infinite = false;  ///< the pair shares a curve of zeros
  std::vector<ComplexZero> inside;
};

inline DiskZeros disk_zeros(const MongePatch& p, const Scalar& radius) {
  DiskZeros d{select_pair(p, radius), radius, false, {}};
  PairZeros z = pair_zeros(d.pair.P, d.pair.Q, 2 * detail::to_complex(radius).real());
  d.infinite = z.infinite;
  if (!d.infinite) d.inside = zeros_in_polydisk(z, radius);
  return d;
}

/// Number of complex umbilics (with multiplicity) in the polydisk; nullopt
/// when the coefficient pair shares a curve of zeros.
inline std::optional<int> complex_count(const DiskZeros& d) {
  if (d.infinite) return std::nullopt;
  int n = 0;
  for (const auto& zr : d.inside) n += zr.multiplicity;
  // when everything is at the origin the local algebra must agree
  bool only_origin = !d.inside.empty() && std::all_of(d.inside.begin(), d.inside.end(), [](const ComplexZero& zr) {
    return zr.u == Complex(0) && zr.v == Complex(0);
  });
  const auto& [branch, P, Q] = d.pair;
  if (only_origin && is_zero(P.constant_term()) && is_zero(Q.constant_term())) {
    MultiplicityResult m = intersection_multiplicity(P, Q);
    if (m.finite() && m.value != n)
      throw Error(ErrorCode::Internal, "disk count " + std::to_string(n) + " disagrees with the local algebra (" +
                                           std::to_string(m.value) + ")");
  }
  return n;
}

inline std::optional<int> complex_count(const MongePatch& p, const Scalar& radius = rational(1, 8)) {
  return complex_count(disk_zeros(p, radius));
}

/// A real umbilic located in the disk.
struct LocatedUmbilic {
  double x = 0, y = 0;    ///< patch coordinates (u, v)
  int multiplicity = 1;   ///< cluster size from the resultant factorisation
  double residual = 0;    ///< max |P|, |Q| after refinement
  double jacobian = 0;    ///< det d(P, Q), relative to |grad P| |grad Q|
  bool morse = false;     ///< simple zero with nondegenerate Jacobian
};

namespace detail {

struct RealPoint {
  Real u, v;
};

inline Real eval_real(const JetPoly& f, const Real& u, const Real& v) {
  Real r = 0;
  for (const auto& [m, c] : f.terms()) {
    Real t = to_complex(c).real();
    for (int k = 0; k < m.i; ++k) t *= u;
    for (int k = 0; k < m.j; ++k) t *= v;
    r += t;
  }
  return r;
}

/// Damped Newton on (P, Q) = 0 from x0.
inline RealPoint newton_refine(const JetPoly& P, const JetPoly& Q, RealPoint x, const Real& tol) {
  JetPoly Pu = P.derive(Var::U), Pv = P.derive(Var::V), Qu = Q.derive(Var::U), Qv = Q.derive(Var::V);
  auto norm = [&](const RealPoint& p) { return std::max(abs(eval_real(P, p.u, p.v)), abs(eval_real(Q, p.u, p.v))); };
  Real cur = norm(x);
  for (int it = 0; it < 100 && cur > tol; ++it) {
    Real a = eval_real(Pu, x.u, x.v), b = eval_real(Pv, x.u, x.v), c = eval_real(Qu, x.u, x.v),
         d = eval_real(Qv, x.u, x.v);
    Real det = a * d - b * c;
    if (det == 0) break;
    Real p = eval_real(P, x.u, x.v), q = eval_real(Q, x.u, x.v);
    Real du = (d * p - b * q) / det, dv = (a * q - c * p) / det;
    Real step = 1;
    bool improved = false;
    for (int h = 0; h < 30; ++h, step /= 2) {
      RealPoint y{x.u - step * du, x.v - step * dv};
      Real n = norm(y);
      if (n < cur) {
        x = y;
        cur = n;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return x;
}

}  // namespace detail

/// Real umbilics inside the disk, refined to residual < tol.
inline std::vector<LocatedUmbilic> find_umbilics(const DiskZeros& d, double tol = 1e-30) {
  if (d.infinite) throw Error(ErrorCode::IllConditioned, "the coefficient pair has a common curve of zeros");
  const SelectedPair& sp = d.pair;
  std::vector<LocatedUmbilic> out;
  JetPoly Pu = sp.P.derive(Var::U), Pv = sp.P.derive(Var::V), Qu = sp.Q.derive(Var::U), Qv = sp.Q.derive(Var::V);
  for (const auto& zr : d.inside) {
    if (!zr.real) continue;
    detail::RealPoint x{zr.u.real(), zr.v.real()};
    if (zr.multiplicity == 1) x = detail::newton_refine(sp.P, sp.Q, x, Real(tol));
    LocatedUmbilic lu;
    lu.x = x.u.convert_to<double>();
    lu.y = x.v.convert_to<double>();
    lu.multiplicity = zr.multiplicity;
    lu.residual = std::max(abs(detail::eval_real(sp.P, x.u, x.v)), abs(detail::eval_real(sp.Q, x.u, x.v))).convert_to<double>();
    Real a = detail::eval_real(Pu, x.u, x.v), b = detail::eval_real(Pv, x.u, x.v), c = detail::eval_real(Qu, x.u, x.v),
         d = detail::eval_real(Qv, x.u, x.v);
    Real scale = sqrt(a * a + b * b) * sqrt(c * c + d * d);
    lu.jacobian = scale == 0 ? 0.0 : Real((a * d - b * c) / scale).convert_to<double>();
    lu.morse = zr.multiplicity == 1 && std::abs(lu.jacobian) > 1e-12;
    out.push_back(lu);
  }
  std::sort(out.begin(), out.end(), [](const LocatedUmbilic& a, const LocatedUmbilic& b) {
    return std::tie(a.x, a.y) < std::tie(b.x, b.y);
  });
  return out;
}

inline std::vector<LocatedUmbilic> find_umbilics(const MongePatch& p, const Scalar& radius = rational(1, 8),
                                                 double tol = 1e-30) {
  return find_umbilics(disk_zeros(p, radius), tol);
}

/// One coefficient direction with its grid of magnitudes.
struct PerturbationAxis {
  JetPoly direction{JetPoly::kExact};
  std::vector<Scalar> magnitudes;
};

struct SplitReport {
  std::vector<Scalar> deltas;  ///< one magnitude per family axis
  std::vector<LocatedUmbilic> real_umbilics;
  std::optional<int> complex_count;
  Scalar radius;
  std::string error;  ///< non-empty if the member could not be evaluated
};

struct SplitExperiment {
  MultiplicityResult mu;
  std::vector<SplitReport> members;
  int max_real_observed = 0;
  bool conserved = true;   ///< complex_count = m_u for every member
  bool all_morse = true;   ///< every located real umbilic passed the Morse test
  bool bounded = true;     ///< max_real_observed <= m_u and real multiplicities <= complex_count
};

inline MongePatch perturbed(const MongePatch& p, const std::vector<PerturbationAxis>& family,
                            const std::vector<Scalar>& deltas) {
  JetPoly f = p.f;
  for (std::size_t k = 0; k < family.size(); ++k) f += family[k].direction * deltas[k];
  return MongePatch(p.ambient, p.axis, f, p.order, p.name);
}

/// Evaluates one member, halving the radius on IllConditioned up to
/// max_halvings times.
inline SplitReport split_member(const MongePatch& q, std::vector<Scalar> deltas, Scalar radius, double tol = 1e-30,
                                int max_halvings = 6) {
  SplitReport rep;
  rep.deltas = std::move(deltas);
  for (int h = 0;; ++h) {
    try {
      rep.radius = radius;
      DiskZeros d = disk_zeros(q, radius);
      rep.complex_count = complex_count(d);
      rep.real_umbilics = find_umbilics(d, tol);
      rep.error.clear();
      return rep;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IllConditioned || h >= max_halvings) {
        rep.error = e.what();
        return rep;
      }
      radius /= 2;
    }
  }
}

/// Sweeps the Cartesian product of the family's magnitude grids. Members
/// run on worker threads; results are kept in sweep order.
inline SplitExperiment split_experiment(const MongePatch& p, const std::vector<PerturbationAxis>& family,
                                        const Scalar& radius = rational(1, 8), double tol = 1e-30) {
  SplitExperiment ex;
  ex.mu = umbilic_multiplicity(p);
  if (!ex.mu.finite()) throw Error(ErrorCode::InvalidArgument, "split_experiment needs a finite multiplicity");
  for (const auto& axis : family)
    if (axis.magnitudes.empty()) throw Error(ErrorCode::InvalidArgument, "empty magnitude grid");

  std::vector<std::vector<Scalar>> grid;
  std::vector<std::size_t> idx(family.size(), 0);
  for (;;) {
    std::vector<Scalar> deltas;
    for (std::size_t k = 0; k < family.size(); ++k) deltas.push_back(family[k].magnitudes[idx[k]]);
    grid.push_back(std::move(deltas));
    std::size_t k = 0;
    while (k < family.size() && ++idx[k] == family[k].magnitudes.size()) idx[k++] = 0;
    if (k == family.size()) break;
  }

  ex.members.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t m; (m = next++) < grid.size();)
      ex.members[m] = split_member(perturbed(p, family, grid[m]), grid[m], radius, tol);
  };
  std::size_t n = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, grid.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& rep : ex.members) {
    if (!rep.error.empty() || !rep.complex_count || *rep.complex_count != ex.mu.value) ex.conserved = false;
    int real_total = 0;
    for (const auto& u : rep.real_umbilics) {
      real_total += u.multiplicity;
      if (!u.morse) ex.all_morse = false;
    }
    ex.max_real_observed = std::max(ex.max_real_observed, static_cast<int>(rep.real_umbilics.size()));
    if (rep.complex_count && real_total > *rep.complex_count) ex.bounded = false;
  }
  if (ex.max_real_observed > ex.mu.value) ex.bounded = false;
  return ex;
}

}  // namespace umbilic
