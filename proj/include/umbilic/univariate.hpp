// Dense univariate polynomials over the rationals with Sturm-sequence root
// isolation.
#pragma once

#include "umbilic/errors.hpp"
#include "umbilic/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace umbilic {

/// c[0] + c[1] p + ... ; trailing zeros are always trimmed.
class UPoly {
 public:
  UPoly() = default;
  UPoly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }
  explicit UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const Scalar& a) { return UPoly({a}); }
  static UPoly monomial(const Scalar& a, int k) {
    std::vector<Scalar> c(k + 1, Scalar(0));
    c[k] = a;
    return UPoly(std::move(c));
  }

  /// Degree, with -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const noexcept { return c_; }
  Scalar coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Scalar(0); }
  Scalar lc() const { return c_.empty() ? Scalar(0) : c_.back(); }

  Scalar eval(const Scalar& x) const {
    Scalar r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  double eval(double x) const {
    double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + to_double(*it);
    return r;
  }

  UPoly derivative() const {
    std::vector<Scalar> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return UPoly(std::move(d));
  }

  UPoly operator-() const {
    UPoly r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const Scalar& s, const UPoly& a) {
    std::vector<Scalar> c(a.c_);
    for (auto& x : c) x *= s;
    return UPoly(std::move(c));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend std::ostream& operator<<(std::ostream& os, const UPoly& p) { return os << p.to_string(); }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
    std::vector<Scalar> r(c_);
    int dd = d.degree();
    std::vector<Scalar> q(std::max(degree() - dd + 1, 0), Scalar(0));
    for (int k = degree(); k >= dd; --k) {
      Scalar f = r[k] / d.lc();
      if (umbilic::is_zero(f)) continue;
      q[k - dd] = f;
      for (int i = 0; i <= dd; ++i) r[k - dd + i] -= f * d.c_[i];
    }
    r.resize(std::max(dd, 0));
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  UPoly monic() const { return is_zero() ? *this : (Scalar(1) / lc()) * *this; }

  std::string to_string(const char* var = "p") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      Scalar a = c_[k];
      if (umbilic::is_zero(a)) continue;
      if (!first) os << (a < 0 ? " - " : " + ");
      else if (a < 0) os << "-";
      if (a < 0) a = -a;
      if (a != 1 || k == 0) os << umbilic::to_string(a) << (k > 0 ? "*" : "");
      if (k > 0) os << var;
      if (k > 1) os << "^" << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && umbilic::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// p / gcd(p, p'), i.e. the product of the distinct irreducible factors.
inline UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  UPoly g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

/// Sturm chain p, p', -rem(p, p'), ...
inline std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> s{p, p.derivative()};
  while (!s.back().is_zero() && s.back().degree() > 0) {
    UPoly r = s[s.size() - 2].divmod(s.back()).second;
    if (r.is_zero()) break;
    s.push_back(-r);
  }
  return s;
}

namespace detail {
inline int sign_variations(const std::vector<UPoly>& chain, const Scalar& x) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    int s = sign(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}
}  // namespace detail

/// Number of distinct real roots in the half-open interval (a, b].
inline int count_real_roots(const UPoly& p, const Scalar& a, const Scalar& b) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "root count of zero polynomial");
  if (p.degree() == 0 || !(a < b)) return 0;
  auto chain = sturm_chain(p);
  return detail::sign_variations(chain, a) - detail::sign_variations(chain, b);
}

/// Cauchy bound: every real root lies strictly inside (-B, B).
inline Scalar root_bound(const UPoly& p) {
  Scalar m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Scalar r = abs(p.coeff(k) / p.lc());
    if (r > m) m = r;
  }
  return m + 1;
}

/// An isolating interval (lo, hi] holding exactly one root of a squarefree
/// polynomial, or a degenerate interval lo == hi when the root is rational and
/// was hit exactly.
struct RootInterval {
  Scalar lo;
  Scalar hi;

  bool exact() const { return lo == hi; }
  Scalar mid() const { return (lo + hi) / 2; }
  double approx() const { return to_double(mid()); }
};

/// Halves an isolating interval of the squarefree polynomial p.
inline void refine_root(const UPoly& p, RootInterval& r) {
  if (r.exact()) return;
  Scalar m = r.mid();
  Scalar pm = p.eval(m);
  if (is_zero(pm)) {
    r.lo = r.hi = m;
    return;
  }
  if (is_zero(p.eval(r.hi))) {
    r.lo = m;
    return;
  }
  if (sign(pm) != sign(p.eval(r.hi)))
    r.lo = m;
  else
    r.hi = m;
}

/// Isolates every distinct real root of p, sorted increasingly.
inline std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
  std::vector<RootInterval> out;
  if (p.degree() <= 0) return out;
  UPoly q = squarefree_part(p);
  auto chain = sturm_chain(q);
  Scalar b = root_bound(q);
  struct Job {
    Scalar lo, hi;
    int vlo, vhi;
  };
  std::vector<Job> stack{{-b, b, detail::sign_variations(chain, -b), detail::sign_variations(chain, b)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    int n = j.vlo - j.vhi;
    if (n == 0) continue;
    if (n == 1) {
      if (is_zero(q.eval(j.hi)))
        out.push_back({j.hi, j.hi});
      else
        out.push_back({j.lo, j.hi});
      continue;
    }
    Scalar m = (j.lo + j.hi) / 2;
    int vm = detail::sign_variations(chain, m);
    stack.push_back({m, j.hi, vm, j.vhi});
    stack.push_back({j.lo, m, j.vlo, vm});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.hi < b.hi; });
  // Half-open intervals may end exactly at a root; turn those into exact hits.
  for (auto& r : out)
    if (!r.exact() && is_zero(q.eval(r.hi))) r.lo = r.hi;
  return out;
}

/// Sign of g at the root of the squarefree polynomial p isolated by r.
/// Refines r in place until the sign is certain.
inline int sign_at_root(const UPoly& g, const UPoly& p, RootInterval& r) {
  if (g.is_zero()) return 0;
  if (r.exact()) return sign(g.eval(r.lo));
  UPoly common = gcd(p, g);
  if (common.degree() > 0 && count_real_roots(common, r.lo, r.hi) > 0) return 0;
  while (count_real_roots(g, r.lo, r.hi) > 0 || is_zero(g.eval(r.hi))) {
    refine_root(p, r);
    if (r.exact()) return sign(g.eval(r.lo));
  }
  return sign(g.eval(r.hi));
}

/// The rational with smallest denominator in the closed interval [lo, hi].
inline Scalar simplest_rational(Scalar lo, Scalar hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return 0;
  bool neg = hi < 0;
  if (neg) {
    Scalar t = -lo;
    lo = -hi;
    hi = t;
  }
  // Continued-fraction walk (Stern-Brocot descent).
  Integer fl = floor(lo);
  if (Scalar(fl) == lo) return neg ? -lo : lo;
  if (Scalar(fl + 1) <= hi) {
    Scalar r = Scalar(fl + 1);
    return neg ? -r : r;
  }
  Scalar inner = simplest_rational(Scalar(1) / (hi - Scalar(fl)), Scalar(1) / (lo - Scalar(fl)));
  Scalar r = Scalar(fl) + Scalar(1) / inner;
  return neg ? -r : r;
}

/// Rational roots of p (distinct, increasing), found exactly.
inline std::vector<Scalar> rational_roots(const UPoly& p) {
  std::vector<Scalar> out;
  if (p.degree() <= 0) return out;
  UPoly q = squarefree_part(p);
  for (auto r : isolate_real_roots(q)) {
    if (r.exact()) {
      out.push_back(r.lo);
      continue;
    }
    // A rational root a/b of the primitive integer form has b | lc, so it is
    // pinned down once the interval is narrower than 1/lc^2.
    Integer den = 1;
    for (const auto& c : q.coeffs()) den = boost::multiprecision::lcm(den, denominator(c));
    Scalar lead = abs(q.lc() * Scalar(den));
    Scalar width = Scalar(1) / (lead * lead * 4);
    while (!r.exact() && r.hi - r.lo > width) refine_root(q, r);
    if (r.exact()) {
      out.push_back(r.lo);
      continue;
    }
    // Only one rational with denominator <= lead fits; it is the simplest one.
    Scalar cand = simplest_rational(r.lo, r.hi);
    if (is_zero(q.eval(cand))) out.push_back(cand);
  }
  return out;
}

}  // namespace umbilic
