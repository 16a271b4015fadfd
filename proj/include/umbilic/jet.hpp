// Truncated bivariate polynomials ("jets") with exact rational coefficients.
#pragma once

#include "umbilic/errors.hpp"
#include "umbilic/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace umbilic {

/// Exponent pair of u^i v^j.
struct Monomial {
  int i = 0;
  int j = 0;

  constexpr int degree() const noexcept { return i + j; }
  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded order: by total degree, then by increasing power of v, so the
/// terms of a jet iterate from the lowest-order form upwards.
struct GradedLess {
  constexpr bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.j < b.j;
  }
};

enum class Var { U, V };

inline constexpr int kDefaultOrder = 7;

/// A polynomial in (u, v) known modulo terms of degree > order().
///
/// Invariants: no stored coefficient is zero and every stored exponent has
/// i + j <= order(). `JetPoly::kExact` marks an untruncated polynomial; ring
/// operations on mixed operands use the smaller order.
class JetPoly {
 public:
  using Terms = std::map<Monomial, Scalar, GradedLess>;

  static constexpr int kExact = 1 << 24;

  explicit JetPoly(int order = kDefaultOrder) : order_(order) {
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "jet order must be non-negative");
  }

  static JetPoly constant(const Scalar& c, int order = kDefaultOrder) {
    JetPoly p(order);
    p.add_term(0, 0, c);
    return p;
  }
  static JetPoly monomial(const Scalar& c, int i, int j, int order = kDefaultOrder) {
    JetPoly p(order);
    p.add_term(i, j, c);
    return p;
  }
  static JetPoly u(int order = kDefaultOrder) { return monomial(1, 1, 0, order); }
  static JetPoly v(int order = kDefaultOrder) { return monomial(1, 0, 1, order); }

  /// Builds a jet from (i, j, coefficient) triples; repeated exponents add up.
  static JetPoly from_terms(const std::vector<std::pair<Monomial, Scalar>>& terms,
                            int order = kDefaultOrder) {
    JetPoly p(order);
    for (const auto& [m, c] : terms) p.add_term(m.i, m.j, c);
    return p;
  }

  int order() const noexcept { return order_; }
  bool is_exact() const noexcept { return order_ >= kExact; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coeff(int i, int j) const {
    auto it = terms_.find(Monomial{i, j});
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar constant_term() const { return coeff(0, 0); }

  /// Lowest total degree of a nonzero term, or -1 for the zero jet.
  int lowest_degree() const noexcept { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }
  /// Highest total degree of a nonzero term, or -1 for the zero jet.
  int degree() const noexcept { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  /// Adds c * u^i v^j, dropping it when beyond the truncation order.
  void add_term(int i, int j, const Scalar& c) {
    if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    if (i + j > order_ || is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  JetPoly homogeneous_part(int d) const {
    JetPoly r(order_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace(m, c);
    return r;
  }

  /// The jet re-read at order min(order(), n).
  JetPoly truncated(int n) const {
    JetPoly r(std::min(order_, n));
    for (const auto& [m, c] : terms_) {
      if (m.degree() > r.order_) break;
      r.terms_.emplace(m, c);
    }
    return r;
  }

  /// Same coefficients, order relabelled. Only meaningful for polynomials
  /// whose higher terms are known to vanish (e.g. exact inputs).
  JetPoly with_order(int n) const {
    if (n >= order_) {
      JetPoly r(*this);
      r.order_ = n;
      return r;
    }
    return truncated(n);
  }

  JetPoly operator-() const {
    JetPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  JetPoly& operator+=(const JetPoly& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, c);
    return *this;
  }
  JetPoly& operator-=(const JetPoly& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, -c);
    return *this;
  }
  JetPoly& operator*=(const Scalar& s) {
    if (is_zero_scalar(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(JetPoly a, const Scalar& s) { return a *= s; }
  friend JetPoly operator*(const Scalar& s, JetPoly a) { return a *= s; }

  friend JetPoly operator*(const JetPoly& a, const JetPoly& b) {
    JetPoly r(std::min(a.order_, b.order_));
    for (const auto& [ma, ca] : a.terms_) {
      if (ma.degree() > r.order_) break;
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.degree() + mb.degree() > r.order_) break;
        r.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
      }
    }
    return r;
  }
  JetPoly& operator*=(const JetPoly& o) { return *this = *this * o; }

  friend bool operator==(const JetPoly& a, const JetPoly& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  /// True when the two jets agree up to the smaller of their orders.
  bool agrees_with(const JetPoly& o) const {
    int n = std::min(order_, o.order_);
    return truncated(n).terms_ == o.truncated(n).terms_;
  }

  /// Formal partial derivative; the result is known to order N - 1.
  JetPoly derive(Var var) const {
    JetPoly r(is_exact() ? order_ : std::max(order_ - 1, 0));
    for (const auto& [m, c] : terms_) {
      int e = var == Var::U ? m.i : m.j;
      if (e == 0) continue;
      if (var == Var::U)
        r.add_term(m.i - 1, m.j, c * e);
      else
        r.add_term(m.i, m.j - 1, c * e);
    }
    return r;
  }

  /// Exchanges the roles of u and v.
  JetPoly swapped() const {
    JetPoly r(order_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(Monomial{m.j, m.i}, c);
    return r;
  }

  /// Evaluates the stored polynomial exactly.
  Scalar eval(const Scalar& uu, const Scalar& vv) const {
    Scalar sum = 0;
    for (const auto& [m, c] : terms_) sum += c * umbilic::pow(uu, m.i) * umbilic::pow(vv, m.j);
    return sum;
  }

  double eval(double uu, double vv) const {
    double sum = 0;
    for (const auto& [m, c] : terms_) sum += to_double(c) * ipow(uu, m.i) * ipow(vv, m.j);
    return sum;
  }

  std::string to_string(const char* un = "x", const char* vn = "y") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Scalar a = c;
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      if (a < 0) a = -a;
      bool unit = a == 1 && m.degree() > 0;
      if (!unit) os << umbilic::to_string(a);
      bool need_star = !unit;
      auto put = [&](const char* name, int e) {
        if (e == 0) return;
        if (need_star) os << "*";
        os << name;
        if (e > 1) os << "^" << e;
        need_star = true;
      };
      put(un, m.i);
      put(vn, m.j);
      first = false;
    }
    return os.str();
  }

 private:
  static bool is_zero_scalar(const Scalar& c) { return c.sign() == 0; }
  static double ipow(double b, int e) {
    double r = 1;
    while (e-- > 0) r *= b;
    return r;
  }

  int order_;
  Terms terms_;
};

inline JetPoly pow(const JetPoly& f, unsigned e) {
  JetPoly result = JetPoly::constant(1, f.order());
  JetPoly b = f;
  while (e) {
    if (e & 1u) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

/// f(h1, h2) truncated to the smallest order involved. The substitution must
/// fix the origin.
inline JetPoly compose(const JetPoly& f, const JetPoly& h1, const JetPoly& h2) {
  if (!is_zero(h1.constant_term()) || !is_zero(h2.constant_term()))
    throw Error(ErrorCode::NonOriginPreserving, "substitution has a nonzero constant term");
  int n = std::min({f.order(), h1.order(), h2.order()});
  JetPoly a = h1.truncated(n), b = h2.truncated(n);
  int top = std::min(f.degree(), n);
  std::vector<JetPoly> pa{JetPoly::constant(1, n)}, pb{JetPoly::constant(1, n)};
  for (int k = 1; k <= top; ++k) {
    pa.push_back(pa.back() * a);
    pb.push_back(pb.back() * b);
  }
  JetPoly r(n);
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() > n) break;
    r += (pa[m.i] * pb[m.j]) * c;
  }
  return r;
}

/// f(u + a, v + b) for an untruncated polynomial f (re-centring at a point).
inline JetPoly translate(const JetPoly& f, const Scalar& a, const Scalar& b) {
  if (!f.is_exact())
    throw Error(ErrorCode::InvalidArgument, "translate needs an exact polynomial");
  JetPoly ua = JetPoly::u(JetPoly::kExact) + JetPoly::constant(a, JetPoly::kExact);
  JetPoly vb = JetPoly::v(JetPoly::kExact) + JetPoly::constant(b, JetPoly::kExact);
  JetPoly r(JetPoly::kExact);
  for (const auto& [m, c] : f.terms()) r += (pow(ua, m.i) * pow(vb, m.j)) * c;
  return r;
}

inline std::ostream& operator<<(std::ostream& os, const JetPoly& p) { return os << p.to_string(); }

}  // namespace umbilic
