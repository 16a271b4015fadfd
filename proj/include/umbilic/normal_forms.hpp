// Binary cubic forms C(x, z) at a timelike umbilic: causal type of the
// linear factors and reduction to the forms (i)-(iv) by a boost and a
// dilatation.
#pragma once

#include "umbilic/analysis.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/jet.hpp"
#include "umbilic/univariate.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace umbilic {

/// a1 x^3 + a2 x^2 z + a3 x z^2 + a4 z^3.
struct CubicForm {
  Scalar a1, a2, a3, a4;

  JetPoly poly() const {
    const int E = JetPoly::kExact;
    return JetPoly::from_terms({{{3, 0}, a1}, {{2, 1}, a2}, {{1, 2}, a3}, {{0, 3}, a4}}, E);
  }
  static CubicForm from_poly(const JetPoly& p) {
    return {p.coeff(3, 0), p.coeff(2, 1), p.coeff(1, 2), p.coeff(0, 3)};
  }
  bool is_zero() const { return a1 == 0 && a2 == 0 && a3 == 0 && a4 == 0; }
  Scalar operator()(const Scalar& x, const Scalar& z) const {
    return a1 * x * x * x + a2 * x * x * z + a3 * x * z * z + a4 * z * z * z;
  }
  friend bool operator==(const CubicForm& a, const CubicForm& b) {
    return a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4;
  }
};

/// Causal character of the curve {a x + b z = 0} through a timelike umbilic.
inline CausalType root_causal_type(const Scalar& a, const Scalar& b) {
  if (a == 0 && b == 0) throw Error(ErrorCode::InvalidArgument, "zero linear form");
  Scalar d = b * b - a * a;
  if (d > 0) return CausalType::Spacelike;
  if (d < 0) return CausalType::Timelike;
  return CausalType::Lightlike;
}

/// Closed rational interval; lo == hi for exact values.
struct Interval {
  Scalar lo, hi;

  Interval() = default;
  Interval(const Scalar& v) : lo(v), hi(v) {}
  Interval(const Scalar& a, const Scalar& b) : lo(a), hi(b) {}

  bool exact() const { return lo == hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Scalar width() const { return hi - lo; }
  Scalar mid() const { return (lo + hi) / 2; }
  double approx() const { return to_double(mid()); }
  std::string to_string() const {
    if (exact()) return umbilic::to_string(lo);
    return "[" + umbilic::to_string(lo) + ", " + umbilic::to_string(hi) + "]";
  }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Scalar p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw Error(ErrorCode::IllConditioned, "interval division by an interval containing 0");
    return a * Interval(Scalar(1) / b.hi, Scalar(1) / b.lo);
  }
};

inline Interval eval(const UPoly& p, const Interval& x) {
  Interval r(Scalar(0));
  for (int k = p.degree(); k >= 0; --k) r = r * x + Interval(p.coeff(k));
  return r;
}

enum class CubicFormTag { I, II, IIIPlus, IIIMinus, IV };

inline const char* form_name(CubicFormTag f) {
  switch (f) {
    case CubicFormTag::I: return "i";
    case CubicFormTag::II: return "ii";
    case CubicFormTag::IIIPlus: return "iii_plus";
    case CubicFormTag::IIIMinus: return "iii_minus";
    case CubicFormTag::IV: return "iv";
  }
  return "?";
}

/// The normal form with parameters (s, t).
inline CubicForm reduced_cubic(CubicFormTag form, const Scalar& s, const Scalar& t) {
  switch (form) {
    case CubicFormTag::I: return {1, s, t, 0};
    case CubicFormTag::II: return {0, t, s, 1};
    case CubicFormTag::IIIPlus: return {1, s + 1, t + s, t};
    case CubicFormTag::IIIMinus: return {1, s - 1, t - s, -t};
    case CubicFormTag::IV: return {0, 1, 0, 0};
  }
  throw Error(ErrorCode::Internal, "bad form");
}

struct ReducedCubic {
  CubicFormTag form = CubicFormTag::IV;
  Interval s, t;  ///< unused for form (iv)
  /// tanh of the boost angle; the boost is x = X - tau Z, z = -tau X + Z up to cosh(theta).
  Interval tau;
  /// When tau is exact: C after the boost equals scale * reduced_cubic(form, s, t).
  std::optional<CubicForm> boosted;
  std::optional<Scalar> scale;

  bool exact() const { return s.exact() && t.exact() && tau.exact(); }
};

namespace detail {

/// Coefficients A1..A4 of C(X - tau Z, -tau X + Z) as cubic polynomials in tau.
inline std::array<UPoly, 4> boost_coefficients(const CubicForm& c) {
  const int E = JetPoly::kExact;
  JetPoly X = JetPoly::u(E), Z = JetPoly::v(E), C = c.poly();
  std::array<std::vector<Scalar>, 4> samples;
  std::vector<Scalar> taus = {0, 1, 2, 3};
  for (const Scalar& tau : taus) {
    CubicForm b = CubicForm::from_poly(compose(C, X - Z * tau, Z - X * tau));
    samples[0].push_back(b.a1);
    samples[1].push_back(b.a2);
    samples[2].push_back(b.a3);
    samples[3].push_back(b.a4);
  }
  std::array<UPoly, 4> out;
  for (int k = 0; k < 4; ++k) {
    UPoly acc;
    for (int i = 0; i < 4; ++i) {
      UPoly basis({Scalar(1)});
      Scalar denom = 1;
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        basis = basis * UPoly({-taus[j], Scalar(1)});
        denom *= taus[i] - taus[j];
      }
      acc = acc + basis * UPoly({samples[k][i] / denom});
    }
    out[k] = acc;
  }
  return out;
}

inline CubicForm boost(const CubicForm& c, const Scalar& tau) {
  const int E = JetPoly::kExact;
  JetPoly X = JetPoly::u(E), Z = JetPoly::v(E);
  return CubicForm::from_poly(compose(c.poly(), X - Z * tau, Z - X * tau));
}

/// Squarefree part of p with the factors vanishing at +-1 removed, and
/// isolating intervals of its roots strictly inside (-1, 1).
inline std::pair<UPoly, std::vector<RootInterval>> roots_in_unit_interval(const UPoly& p) {
  std::pair<UPoly, std::vector<RootInterval>> out;
  if (p.degree() <= 0) return out;
  UPoly q = squarefree_part(p);
  for (int b : {1, -1})
    if (is_zero(q.eval(Scalar(b)))) q = q.divmod(UPoly({Scalar(-b), Scalar(1)})).first;
  out.first = q;
  std::vector<Scalar> rational = rational_roots(q);
  for (RootInterval r : isolate_real_roots(q)) {
    for (const Scalar& x : rational)
      if (r.lo < x && x <= r.hi) r.lo = r.hi = x;
    for (;;) {
      if (r.exact() || r.hi <= -1 || r.lo >= 1 || (r.lo > -1 && r.hi < 1)) break;
      refine_root(q, r);
    }
    Scalar v = r.exact() ? r.lo : r.mid();
    if (v > -1 && v < 1) out.second.push_back(r);
  }
  return out;
}

/// Evaluates num / den at the root of q in r, refining r until the
/// enclosure is narrower than 2^-40.
inline Interval ratio_at_root(const UPoly& num, const UPoly& den, const UPoly& q, RootInterval& r) {
  const Scalar tol = Scalar(1) / Scalar(Integer(1) << 40);
  for (;;) {
    if (r.exact()) return Interval(num.eval(r.lo) / den.eval(r.lo));
    Interval x(r.lo, r.hi);
    Interval d = eval(den, x);
    if (!d.contains_zero()) {
      Interval v = eval(num, x) / d;
      if (v.width() <= tol) return v;
    }
    refine_root(q, r);
  }
}

inline ReducedCubic finish(CubicFormTag form, const CubicForm& c, const UPoly& q, RootInterval r,
                           const std::array<UPoly, 4>& A, int lead, int sidx, int tidx) {
  ReducedCubic out;
  out.form = form;
  out.s = ratio_at_root(A[sidx], A[lead], q, r);
  out.t = ratio_at_root(A[tidx], A[lead], q, r);
  out.tau = r.exact() ? Interval(r.lo) : Interval(r.lo, r.hi);
  if (r.exact()) {
    out.boosted = boost(c, r.lo);
    out.scale = A[lead].eval(r.lo);
  }
  return out;
}

}  // namespace detail

/// Reduces C by a boost and a dilatation. A timelike root with a non-vanishing
/// X^3 coefficient gives (i); otherwise (iv), then a lightlike factor (iii),
/// then a spacelike root gives (ii).
inline ReducedCubic reduce_cubic(const CubicForm& c) {
  if (c.is_zero()) throw Error(ErrorCode::ZeroCubic, "cubic form is identically zero");
  auto A = detail::boost_coefficients(c);
  // A4(tau) = C(-tau, 1): timelike roots sit at |tau| < 1.
  auto [q4, timelike] = detail::roots_in_unit_interval(A[3]);
  for (RootInterval r : timelike)
    if (sign_at_root(A[0], q4, r) != 0) return detail::finish(CubicFormTag::I, c, q4, r, A, 0, 1, 2);
  for (RootInterval r : timelike) {
    if (sign_at_root(A[2], q4, r) != 0) continue;
    ReducedCubic out;
    out.form = CubicFormTag::IV;
    out.tau = r.exact() ? Interval(r.lo) : Interval(r.lo, r.hi);
    if (r.exact()) {
      out.boosted = detail::boost(c, r.lo);
      out.scale = A[1].eval(r.lo);
    }
    return out;
  }
  auto lightlike = [&]() -> std::optional<ReducedCubic> {
    for (int e : {1, -1}) {
      // x + e z divides C iff C(1, -e) = 0.
      if (c(Scalar(1), Scalar(-e)) != 0) continue;
      for (Scalar tau : {Scalar(0), rational(1, 2), rational(-1, 2), rational(1, 3), rational(-1, 3)}) {
        CubicForm b = detail::boost(c, tau);
        if (b.a1 == 0) continue;
        // (x + e z)(q0 x^2 + q1 x z + q2 z^2) with q0 = a1, q1 = a2 - e a1, q2 = e a4.
        ReducedCubic out;
        out.form = e > 0 ? CubicFormTag::IIIPlus : CubicFormTag::IIIMinus;
        out.s = Interval((b.a2 - e * b.a1) / b.a1);
        out.t = Interval(e * b.a4 / b.a1);
        out.tau = Interval(tau);
        out.boosted = b;
        out.scale = b.a1;
        return out;
      }
    }
    return std::nullopt;
  };
  auto spacelike = [&]() -> std::optional<ReducedCubic> {
    // A1(tau) = C(1, -tau).
    auto [q1, roots] = detail::roots_in_unit_interval(A[0]);
    for (RootInterval r : roots)
      if (sign_at_root(A[3], q1, r) != 0) return detail::finish(CubicFormTag::II, c, q1, r, A, 3, 2, 1);
    return std::nullopt;
  };
  // With a timelike root left over (the X Z (d X + Z) case) a lightlike factor
  // takes precedence; otherwise a spacelike root does.
  bool has_timelike = !timelike.empty();
  if (auto r = has_timelike ? lightlike() : spacelike()) return *r;
  if (auto r = has_timelike ? spacelike() : lightlike()) return *r;
  throw Error(ErrorCode::Internal, "cubic form could not be reduced");
}

}  // namespace umbilic
