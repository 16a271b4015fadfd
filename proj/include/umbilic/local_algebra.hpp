// Local algebra of plane curve germs at the origin: intersection numbers,
// Milnor numbers and recognition of simple (ADE) singularities.
#pragma once

#include "umbilic/errors.hpp"
#include "umbilic/jet.hpp"
#include "umbilic/scalar.hpp"
#include "umbilic/univariate.hpp"

#include <optional>
#include <string>
#include <utility>

namespace umbilic {

struct MultiplicityResult {
  bool infinite = false;
  int value = 0;
  /// Smallest truncation order from which the value no longer changed.
  int stabilized_at = 0;
  /// True when the value provably equals the multiplicity of the full germs
  /// (an Infinite result is only certified for untruncated polynomials).
  bool certified = true;

  bool finite() const noexcept { return !infinite; }
  std::string to_string() const { return infinite ? "infinite" : std::to_string(value); }
  friend bool operator==(const MultiplicityResult& a, const MultiplicityResult& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

namespace detail {

struct FultonOutcome {
  bool infinite = false;
  int value = 0;
};

inline JetPoly restrict_to_axis(const JetPoly& f) {
  JetPoly r(f.order());
  for (const auto& [m, c] : f.terms())
    if (m.j == 0) r.add_term(m.i, 0, c);
  return r;
}

inline int x_degree(const JetPoly& f0) {
  int d = -1;
  for (const auto& [m, c] : f0.terms()) d = std::max(d, m.i);
  return d;
}

inline int x_order(const JetPoly& f0) {
  int d = -1;
  for (const auto& [m, c] : f0.terms())
    if (d < 0 || m.i < d) d = m.i;
  return d;
}

inline JetPoly divide_by_v(const JetPoly& f) {
  JetPoly r(f.is_exact() ? f.order() : std::max(f.order() - 1, 0));
  for (const auto& [m, c] : f.terms()) r.add_term(m.i, m.j - 1, c);
  return r;
}

/// Fulton's procedure applied to the stored polynomials, with every
/// intermediate product truncated to the operands' order.
inline FultonOutcome fulton(JetPoly f, JetPoly g) {
  FultonOutcome out;
  for (;;) {
    if (!is_zero(f.constant_term()) || !is_zero(g.constant_term())) return out;
    if (f.is_zero() || g.is_zero()) {
      out.infinite = true;
      return out;
    }
    JetPoly f0 = restrict_to_axis(f), g0 = restrict_to_axis(g);
    if (f0.is_zero() && g0.is_zero()) {
      out.infinite = true;
      return out;
    }
    if (g0.is_zero()) {
      std::swap(f, g);
      std::swap(f0, g0);
    }
    if (f0.is_zero()) {
      // f = v h: I(v, g) is the order of g(u, 0).
      out.value += x_order(g0);
      f = divide_by_v(f);
      continue;
    }
    int r = x_degree(f0), s = x_degree(g0);
    if (r > s) {
      std::swap(f, g);
      std::swap(f0, g0);
      std::swap(r, s);
    }
    Scalar lf = f0.coeff(r, 0), lg = g0.coeff(s, 0);
    f *= Scalar(1) / lf;
    g = g - (f * JetPoly::monomial(lg, s - r, 0, JetPoly::kExact));
  }
}

}  // namespace detail

/// Local intersection number at the origin of the complexified germs.
///
/// The pair is processed at truncation orders n; a value v computed at order
/// n is certified once v <= n, because then m^v lies in the ideal and terms of
/// degree > n cannot change it. For untruncated polynomials the Bezout bound
/// deg f * deg g caps any finite answer, so an uncertified run at that order
/// proves a common component. stabilized_at is the smallest order from which
/// every run returns the final value; the run at one order above is checked.
inline MultiplicityResult intersection_multiplicity(const JetPoly& f, const JetPoly& g,
                                                    int max_order = 64) {
  if (!is_zero(f.constant_term()) || !is_zero(g.constant_term()))
    throw Error(ErrorCode::NotAtOrigin, "germ does not vanish at the origin");
  if (f.is_zero() || g.is_zero()) return {true, 0, 1, f.is_exact() && g.is_exact()};
  bool exact = f.is_exact() && g.is_exact();
  int top = exact ? std::min(max_order, std::max(1, f.degree() * g.degree()))
                  : std::min(f.order(), g.order());
  auto run = [&](int n) { return detail::fulton(f.truncated(n), g.truncated(n)); };
  auto certified_at = [](const detail::FultonOutcome& o, int n) { return !o.infinite && o.value <= n; };

  int n = std::max(1, std::min({f.lowest_degree(), g.lowest_degree(), top}));
  detail::FultonOutcome cur = run(n);
  while (!certified_at(cur, n) && n < top) {
    n = std::min(top, 2 * n);
    cur = run(n);
  }
  if (!certified_at(cur, n)) {
    if (exact && top == f.degree() * g.degree()) return {true, 0, top, true};
    if (cur.infinite) return {true, 0, n, false};
    throw Error(ErrorCode::TruncationInsufficient,
                "intersection number not determined at order " + std::to_string(top));
  }
  const int value = cur.value;
  if (value + 1 <= top) {
    auto above = run(value + 1);
    if (above.infinite || above.value != value)
      throw Error(ErrorCode::Internal, "certified intersection number changed with the order");
  }
  int stable = std::max(1, value);
  while (stable > 1) {
    auto below = run(stable - 1);
    if (below.infinite || below.value != value) break;
    --stable;
  }
  return {false, value, stable, true};
}

/// Milnor number mu(f) = I(f_u, f_v); zero at a regular point.
inline MultiplicityResult milnor_number(const JetPoly& f) {
  JetPoly fu = f.derive(Var::U), fv = f.derive(Var::V);
  if (!is_zero(fu.constant_term()) || !is_zero(fv.constant_term())) return {false, 0, 0, true};
  return intersection_multiplicity(fu, fv);
}

struct HessianInfo {
  int corank = 0;
  int det_sign = 0;
};

inline HessianInfo corank_and_hessian(const JetPoly& f) {
  Scalar a = 2 * f.coeff(2, 0), b = f.coeff(1, 1), c = 2 * f.coeff(0, 2);
  Scalar det = a * c - b * b;
  HessianInfo h;
  h.det_sign = sign(det);
  if (h.det_sign != 0)
    h.corank = 0;
  else if (is_zero(a) && is_zero(b) && is_zero(c))
    h.corank = 2;
  else
    h.corank = 1;
  return h;
}

enum class SingTag { Regular, A, D, E6, E7, E8, NonSimple, Degenerate };

struct SingularityClass {
  SingTag tag = SingTag::Regular;
  int k = 0;
  /// +1, -1, or 0 when the class carries no sign.
  int sign = 0;
  int milnor = 0;

  std::string to_string() const {
    auto sg = [&] { return sign > 0 ? "+" : sign < 0 ? "-" : ""; };
    switch (tag) {
      case SingTag::Regular: return "Regular";
      case SingTag::A: return "A" + std::to_string(k) + sg();
      case SingTag::D: return "D" + std::to_string(k) + sg();
      case SingTag::E6: return "E6";
      case SingTag::E7: return "E7";
      case SingTag::E8: return "E8";
      case SingTag::NonSimple: return "NonSimple";
      case SingTag::Degenerate: return "Degenerate";
    }
    return "?";
  }
  friend bool operator==(const SingularityClass& a, const SingularityClass& b) {
    return a.tag == b.tag && a.k == b.k && a.sign == b.sign;
  }
};

namespace detail {

/// Linear change of coordinates (u, v) -> (p u + q v, r u + s v) applied to f.
inline JetPoly linear_substitute(const JetPoly& f, const Scalar& p, const Scalar& q, const Scalar& r,
                                 const Scalar& s) {
  int n = f.order();
  JetPoly h1 = JetPoly::u(n) * p + JetPoly::v(n) * q;
  JetPoly h2 = JetPoly::u(n) * r + JetPoly::v(n) * s;
  return compose(f, h1, h2);
}

/// With f = lambda u^2 + ..., solves f_u(X(v), v) = 0 for the power series X
/// and returns the restriction f(X(v), v) as a series in v.
inline JetPoly eliminate_quadratic_variable(const JetPoly& f) {
  int n = f.order();
  Scalar two_lambda = 2 * f.coeff(2, 0);
  JetPoly fu = f.derive(Var::U);
  JetPoly x(n);
  for (int it = 0; it <= n + 1; ++it) {
    JetPoly val = compose(fu.with_order(n), x, JetPoly::v(n));
    if (val.is_zero()) break;
    x -= val * (Scalar(1) / two_lambda);
  }
  return compose(f, x, JetPoly::v(n));
}

}  // namespace detail

/// Recognises Regular, A_k, D_k, E6, E7, E8; everything else of finite Milnor
/// number is NonSimple. Signs follow the zero-set convention: A_k^+ and D_k^+
/// have an isolated real zero set or a single real branch through 0.
inline SingularityClass classify_singularity(const JetPoly& f) {
  if (!is_zero(f.constant_term())) throw Error(ErrorCode::NotAtOrigin, "germ does not vanish at the origin");
  SingularityClass out;
  if (!is_zero(f.coeff(1, 0)) || !is_zero(f.coeff(0, 1))) return out;
  MultiplicityResult mu = milnor_number(f);
  if (mu.infinite) {
    out.tag = SingTag::Degenerate;
    return out;
  }
  out.milnor = mu.value;
  HessianInfo h = corank_and_hessian(f);
  if (h.corank == 0) {
    out.tag = SingTag::A;
    out.k = 1;
    out.sign = h.det_sign;
    return out;
  }
  if (h.corank == 1) {
    out.tag = SingTag::A;
    out.k = mu.value;
    if (mu.value % 2 == 0) return out;
    if (f.order() < mu.value + 1)
      throw Error(ErrorCode::TruncationInsufficient, "A-series sign needs the jet to order mu + 1");
    Scalar a = f.coeff(2, 0), b = f.coeff(1, 1), c = f.coeff(0, 2);
    JetPoly g = f;
    if (!is_zero(a)) {
      // u -> u - (b / 2a) v makes the quadratic part a u^2.
      g = detail::linear_substitute(f, 1, -b / (2 * a), 0, 1);
    } else {
      g = detail::linear_substitute(f, 0, 1, 1, 0);
      a = c;
      b = g.coeff(1, 1);
      g = detail::linear_substitute(g, 1, -b / (2 * a), 0, 1);
    }
    JetPoly r = detail::eliminate_quadratic_variable(g.truncated(mu.value + 1));
    Scalar lead = r.coeff(0, mu.value + 1);
    if (is_zero(lead)) throw Error(ErrorCode::Internal, "A-series restriction has wrong order");
    out.sign = sign(lead) * sign(a);
    return out;
  }
  // Corank 2: look at the cubic part a u^3 + b u^2 v + c u v^2 + d v^3.
  Scalar a = f.coeff(3, 0), b = f.coeff(2, 1), c = f.coeff(1, 2), d = f.coeff(0, 3);
  if (is_zero(a) && is_zero(b) && is_zero(c) && is_zero(d)) {
    out.tag = SingTag::NonSimple;
    return out;
  }
  Scalar disc = b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
  if (!is_zero(disc)) {
    out.tag = SingTag::D;
    out.k = 4;
    out.sign = disc > 0 ? -1 : 1;
    return out;
  }
  bool cube = is_zero(b * b - 3 * a * c) && is_zero(b * c - 9 * a * d) && is_zero(c * c - 3 * b * d);
  if (cube) {
    switch (mu.value) {
      case 6: out.tag = SingTag::E6; break;
      case 7: out.tag = SingTag::E7; break;
      case 8: out.tag = SingTag::E8; break;
      default: out.tag = SingTag::NonSimple; break;
    }
    out.k = out.tag == SingTag::NonSimple ? 0 : mu.value;
    return out;
  }
  out.tag = SingTag::D;
  out.k = mu.value;
  if (mu.value % 2 == 1) return out;
  // Move the double root of the cubic to u = 0 and the simple one to v = 0, so
  // the cubic reads e u^2 v, then clear mixed terms until a pure power of v is
  // left: f ~ e u^2 v + w v^(k-1), and the sign is sign(e w).
  JetPoly g = f;
  // Shear v -> v + lambda u until the u^3 coefficient C(1, lambda) is nonzero.
  for (int lambda = 0; is_zero(g.coeff(3, 0)); ++lambda)
    g = detail::linear_substitute(f, 1, 0, lambda + 1, 1);
  a = g.coeff(3, 0), b = g.coeff(2, 1), c = g.coeff(1, 2), d = g.coeff(0, 3);
  UPoly cu({d, c, b, a});  // cubic at (t, 1), roots t = u / v
  UPoly dbl = gcd(cu, cu.derivative());
  Scalar t2 = -dbl.coeff(0) / dbl.coeff(1);
  UPoly simple = cu.divmod(UPoly({-t2, 1}) * UPoly({-t2, 1})).first;
  Scalar t1 = -simple.coeff(0) / simple.coeff(1);
  // U = u - t2 v (double factor), V = u - t1 v (simple factor).
  Scalar den = t1 - t2;
  g = detail::linear_substitute(g, t1 / den, -t2 / den, 1 / den, -1 / den);
  Scalar e = g.coeff(2, 1);
  if (is_zero(e) || !is_zero(g.coeff(3, 0)) || !is_zero(g.coeff(1, 2)) || !is_zero(g.coeff(0, 3)))
    throw Error(ErrorCode::Internal, "D-series normalisation failed");
  if (f.order() < mu.value - 1)
    throw Error(ErrorCode::TruncationInsufficient, "D-series sign needs the jet to order mu - 1");
  g = g.truncated(mu.value - 1);
  int n = g.order();
  for (int deg = 4; deg <= mu.value - 1; ++deg) {
    for (int guard = 0; guard < 4 * n; ++guard) {
      bool changed = false;
      for (const auto& [m, coef] : g.terms()) {
        if (m.degree() != deg) continue;
        if (m.i >= 2) {
          // absorb coef u^i v^j into e u^2 v via v -> v - coef/e u^(i-2) v^j
          JetPoly shift = JetPoly::monomial(coef / e, m.i - 2, m.j, n);
          g = compose(g, JetPoly::u(n), JetPoly::v(n) - shift);
          changed = true;
          break;
        }
        if (m.i == 1) {
          JetPoly shift = JetPoly::monomial(coef / (2 * e), 0, m.j - 1, n);
          g = compose(g, JetPoly::u(n) - shift, JetPoly::v(n));
          changed = true;
          break;
        }
      }
      if (!changed) break;
    }
  }
  Scalar w = g.coeff(0, mu.value - 1);
  if (is_zero(w)) throw Error(ErrorCode::Internal, "D-series normal form has wrong order");
  out.sign = sign(e) * sign(w);
  return out;
}

/// Weights (r1, r2) with r1 i + r2 j = 1 on every monomial of f, when they
/// exist, are unique and positive.
inline std::optional<std::pair<Scalar, Scalar>> quasihomogeneous_weights(const JetPoly& f) {
  if (f.is_zero()) return std::nullopt;
  const Monomial* first = nullptr;
  const Monomial* second = nullptr;
  for (const auto& [m, c] : f.terms()) {
    if (!first) {
      first = &m;
      continue;
    }
    if (first->i * m.j - first->j * m.i != 0) {
      second = &m;
      break;
    }
  }
  if (!second) return std::nullopt;
  Scalar det = Scalar(first->i * second->j - first->j * second->i);
  Scalar r1 = Scalar(second->j - first->j) / det;
  Scalar r2 = Scalar(first->i - second->i) / det;
  if (r1 <= 0 || r2 <= 0) return std::nullopt;
  for (const auto& [m, c] : f.terms())
    if (r1 * m.i + r2 * m.j != 1) return std::nullopt;
  return std::make_pair(r1, r2);
}

inline std::ostream& operator<<(std::ostream& os, const MultiplicityResult& r) { return os << r.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const SingularityClass& c) { return os << c.to_string(); }

}  // namespace umbilic
