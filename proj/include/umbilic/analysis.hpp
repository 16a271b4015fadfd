// Umbilic detection and typing, the multiplicity m_u, the BDE multiplicity
// m(omega), and the 1-jet configuration analysis through phi and alpha.
#pragma once

#include "umbilic/errors.hpp"
#include "umbilic/jet.hpp"
#include "umbilic/local_algebra.hpp"
#include "umbilic/surface.hpp"
#include "umbilic/univariate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace umbilic {

enum class CausalType { Spacelike, Timelike, Lightlike, NotUmbilic };

inline const char* causal_name(CausalType c) {
  switch (c) {
    case CausalType::Spacelike: return "spacelike";
    case CausalType::Timelike: return "timelike";
    case CausalType::Lightlike: return "lightlike";
    case CausalType::NotUmbilic: return "not_umbilic";
  }
  return "?";
}

/// Orders tried when an answer is not yet determined: start at the patch's
/// working order and double up to max_order.
struct AnalysisOptions {
  int max_order = 64;
  /// The discriminant and its companion grow quickly with the order, so
  /// m(omega) stops earlier; a non-reduced discriminant then reports an
  /// uncertified infinite value.
  int omega_max_order = 28;
};

namespace detail {

template <class Compute>
MultiplicityResult escalate(int start, int max_order, Compute&& compute) {
  int n = std::max(start, 2);
  for (;;) {
    try {
      MultiplicityResult r = compute(n);
      if (r.certified || n >= max_order) return r;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TruncationInsufficient || n >= max_order) throw;
    }
    n = std::min(max_order, 2 * n);
  }
}

}  // namespace detail

/// Metric signature at the origin: sign of (F^2 - E G)(0).
inline int metric_signature_sign(const MongePatch& p) {
  FundamentalForms ff = fundamental_forms(p, 0);
  return sign(ff.F.constant_term() * ff.F.constant_term() - ff.E.constant_term() * ff.G.constant_term());
}

inline CausalType detect_umbilic(const MongePatch& p) {
  BdeGerm w = principal_bde(p, 0);
  if (!w.vanishes_at_origin()) return CausalType::NotUmbilic;
  int s = metric_signature_sign(p);
  if (s < 0) return CausalType::Spacelike;
  if (s > 0) return CausalType::Timelike;
  return CausalType::Lightlike;
}

/// Which pair of BDE coefficients measures the multiplicity: the first of
/// E, F, G that is nonzero at the origin.
enum class MetricBranch { E, F, G };

inline const char* branch_name(MetricBranch b) {
  return b == MetricBranch::E ? "E" : b == MetricBranch::F ? "F" : "G";
}

inline MetricBranch metric_branch(const MongePatch& p) {
  FundamentalForms ff = fundamental_forms(p, 0);
  if (!is_zero(ff.E.constant_term())) return MetricBranch::E;
  if (!is_zero(ff.F.constant_term())) return MetricBranch::F;
  if (!is_zero(ff.G.constant_term())) return MetricBranch::G;
  throw Error(ErrorCode::NoNonzeroMetricCoefficient, "E, F and G all vanish at the origin");
}

/// m(b, c) on branch E, m(a, c) on branch F, m(a, b) on branch G.
inline MultiplicityResult germ_multiplicity(const BdeGerm& w, MetricBranch branch) {
  switch (branch) {
    case MetricBranch::E: return intersection_multiplicity(w.b, w.c);
    case MetricBranch::F: return intersection_multiplicity(w.a, w.c);
    case MetricBranch::G: return intersection_multiplicity(w.a, w.b);
  }
  throw Error(ErrorCode::Internal, "bad branch");
}

inline MultiplicityResult umbilic_multiplicity(const MongePatch& p, const AnalysisOptions& opt = {}) {
  if (detect_umbilic(p) == CausalType::NotUmbilic)
    throw Error(ErrorCode::NotUmbilic, "the origin is not an umbilic point");
  MetricBranch branch = metric_branch(p);
  BdeGerm exact = principal_bde_exact(p);
  return detail::escalate(p.order, opt.max_order,
                          [&](int n) { return germ_multiplicity(exact.truncated(n), branch); });
}

/// m(omega) = 1/2 I(delta, a delta_u^2 - b delta_u delta_v + c delta_v^2).
inline MultiplicityResult bde_multiplicity(const BdeGerm& w) {
  JetPoly delta = w.discriminant();
  JetPoly du = delta.derive(Var::U), dv = delta.derive(Var::V);
  JetPoly second = w.a * du * du - w.b * du * dv + w.c * dv * dv;
  if (!is_zero(delta.constant_term()) || !is_zero(second.constant_term())) return {false, 0, 0, true};
  MultiplicityResult r = intersection_multiplicity(delta, second);
  if (r.finite()) {
    if (r.value % 2 != 0)
      throw Error(ErrorCode::OddDimension, "odd local algebra dimension " + std::to_string(r.value));
    r.value /= 2;
  }
  return r;
}

inline MultiplicityResult bde_multiplicity(const MongePatch& p, const AnalysisOptions& opt = {}) {
  BdeGerm exact = principal_bde_exact(p);
  return detail::escalate(p.order, std::min(opt.max_order, opt.omega_max_order),
                          [&](int n) { return bde_multiplicity(exact.truncated(n)); });
}

struct PhiAlpha {
  UPoly phi;    ///< a_v p^3 + (a_u + b_v) p^2 + (b_u + c_v) p + c_u
  UPoly alpha;  ///< a_v p^2 + (b_v / 2 + a_u) p + b_u / 2
  /// The same pair in the chart q = du/dv, where q = 0 is the direction p = oo.
  UPoly phi_inf;
  UPoly alpha_inf;
};

inline PhiAlpha phi_alpha(const BdeGerm& w) {
  Scalar au = w.a.coeff(1, 0), av = w.a.coeff(0, 1);
  Scalar bu = w.b.coeff(1, 0), bv = w.b.coeff(0, 1);
  Scalar cu = w.c.coeff(1, 0), cv = w.c.coeff(0, 1);
  if (au == 0 && av == 0 && bu == 0 && bv == 0 && cu == 0 && cv == 0)
    throw Error(ErrorCode::ZeroOneJet, "the 1-jet of the BDE vanishes");
  Scalar h(1, 2);
  PhiAlpha pa;
  pa.phi = UPoly({cu, bu + cv, au + bv, av});
  pa.alpha = UPoly({h * bu, h * bv + au, av});
  pa.phi_inf = UPoly({av, bv + au, cv + bu, cu});
  pa.alpha_inf = UPoly({h * bv, h * bu + cv, cu});
  return pa;
}

enum class RootType { Saddle, Node, Degenerate };

inline const char* root_type_name(RootType t) {
  return t == RootType::Saddle ? "saddle" : t == RootType::Node ? "node" : "degenerate";
}

struct PhiRoot {
  bool at_infinity = false;
  RootInterval where;  ///< isolating interval for finite roots
  RootType type = RootType::Degenerate;

  double approx() const { return where.approx(); }
};

enum class ConfigKind { Lemon, Monstar, Star, Timelike, Degenerate };

struct ConfigLabel {
  ConfigKind kind = ConfigKind::Degenerate;
  int saddles = 0;
  int nodes = 0;
  std::vector<PhiRoot> roots;
  std::string reason;  ///< why the configuration is degenerate

  std::string to_string() const {
    switch (kind) {
      case ConfigKind::Lemon: return "lemon";
      case ConfigKind::Monstar: return "monstar";
      case ConfigKind::Star: return "star";
      case ConfigKind::Timelike:
        return "timelike(" + std::to_string(saddles) + "S," + std::to_string(nodes) + "N)";
      case ConfigKind::Degenerate: return "degenerate";
    }
    return "?";
  }
  friend bool operator==(const ConfigLabel& a, const ConfigLabel& b) {
    return a.kind == b.kind && a.saddles == b.saddles && a.nodes == b.nodes;
  }
};

inline ConfigLabel degenerate_config(std::string reason) {
  ConfigLabel c;
  c.reason = std::move(reason);
  return c;
}

/// Configuration determined by the 1-jet: every real root of phi (including
/// the direction p = oo) is a saddle when phi' alpha > 0 and a node when < 0.
inline ConfigLabel classify_config(const BdeGerm& w) {
  if (!w.vanishes_at_origin()) return degenerate_config("BDE coefficients do not all vanish at the origin");
  PhiAlpha pa;
  try {
    pa = phi_alpha(w);
  } catch (const Error& e) {
    return degenerate_config("1-jet of the BDE is zero");
  }
  const int E = JetPoly::kExact;
  BdeGerm lin{w.a.truncated(1).with_order(E), w.b.truncated(1).with_order(E), w.c.truncated(1).with_order(E)};
  JetPoly delta2 = lin.discriminant();
  HessianInfo h = corank_and_hessian(delta2);
  if (h.corank != 0) return degenerate_config("discriminant is not Morse");
  if (pa.phi.is_zero()) return degenerate_config("phi vanishes identically");
  ConfigLabel out;
  // Root at infinity: phi has degree < 3.
  int deg = pa.phi.degree();
  if (deg < 2) return degenerate_config("phi has a repeated root at infinity");
  if (gcd(pa.phi, pa.phi.derivative()).degree() > 0) return degenerate_config("phi has a repeated root");
  if (gcd(pa.phi, pa.alpha).degree() > 0 || (pa.alpha.is_zero()))
    return degenerate_config("phi and alpha have a common root");
  if (deg == 2) {
    if (is_zero(pa.alpha_inf.coeff(0))) return degenerate_config("phi and alpha have a common root");
    PhiRoot r;
    r.at_infinity = true;
    int s = sign(pa.phi_inf.coeff(1)) * sign(pa.alpha_inf.coeff(0));
    r.type = s > 0 ? RootType::Saddle : RootType::Node;
    out.roots.push_back(r);
  }
  for (RootInterval iv : isolate_real_roots(pa.phi)) {
    PhiRoot r;
    int s = sign_at_root(pa.phi.derivative(), pa.phi, iv) * sign_at_root(pa.alpha, pa.phi, iv);
    r.where = iv;
    r.type = s > 0 ? RootType::Saddle : s < 0 ? RootType::Node : RootType::Degenerate;
    out.roots.push_back(r);
  }
  for (const auto& r : out.roots) {
    if (r.type == RootType::Saddle) ++out.saddles;
    if (r.type == RootType::Node) ++out.nodes;
  }
  if (h.det_sign < 0) {
    out.kind = ConfigKind::Timelike;
    return out;
  }
  if (out.saddles == 1 && out.nodes == 0)
    out.kind = ConfigKind::Lemon;
  else if (out.saddles == 3 && out.nodes == 0)
    out.kind = ConfigKind::Star;
  else if (out.saddles == 2 && out.nodes == 1)
    out.kind = ConfigKind::Monstar;
  else
    out.reason = "unexpected saddle/node pattern at an A1+ umbilic";
  return out;
}

struct InequalityCheck {
  MultiplicityResult m_u;
  MultiplicityResult m_omega;
  bool holds = false;
};

/// m(omega) >= 3 m_u; a failure indicates a bug and is raised as Internal.
inline InequalityCheck check_inequality(const MongePatch& p, const AnalysisOptions& opt = {}) {
  InequalityCheck c;
  c.m_u = umbilic_multiplicity(p, opt);
  c.m_omega = bde_multiplicity(p, opt);
  if (c.m_u.infinite || c.m_omega.infinite)
    throw Error(ErrorCode::InvalidArgument, "inequality needs finite multiplicities");
  c.holds = c.m_omega.value >= 3 * c.m_u.value;
  if (!c.holds)
    throw Error(ErrorCode::Internal, "m(omega) = " + c.m_omega.to_string() + " < 3 m_u = " +
                                         std::to_string(3 * c.m_u.value));
  return c;
}

/// Candidates for m_u read off from the class of the LPL at a timelike
/// umbilic (A-_{2k-1} -> k, D_{2k+1} and D+_{2k} -> 2, D-_{2k} -> 2 or k,
/// E7 -> 3). Empty when the class is outside the table.
inline std::vector<int> lpl_table_multiplicity(const SingularityClass& cls) {
  switch (cls.tag) {
    case SingTag::A:
      if (cls.k % 2 == 1 && cls.sign < 0) return {(cls.k + 1) / 2};
      return {};
    case SingTag::D:
      if (cls.k % 2 == 1 || cls.sign > 0) return {2};
      if (cls.k / 2 == 2) return {2};
      return {2, cls.k / 2};
    case SingTag::E7: return {3};
    default: return {};
  }
}

/// Full report for one patch. Each part that fails records its error text
/// instead of aborting the rest.
struct UmbilicReport {
  CausalType causal_type = CausalType::NotUmbilic;
  std::optional<MultiplicityResult> m_u;
  std::optional<MultiplicityResult> m_omega;
  std::optional<SingularityClass> discriminant_class;
  std::optional<SingularityClass> ld_class;
  std::optional<MultiplicityResult> ld_milnor;
  /// LD defining polynomial quasi-homogeneous in the patch coordinates. The
  /// equality m_u = mu(LD) is only asserted when this holds; false means
  /// "not verified", not "fails".
  std::optional<bool> ld_quasihomogeneous;
  ConfigLabel config;
  std::optional<MetricBranch> branch;
  std::vector<std::string> errors;
};

inline UmbilicReport analyze_umbilic(const MongePatch& p, const AnalysisOptions& opt = {}) {
  UmbilicReport r;
  r.causal_type = detect_umbilic(p);
  if (r.causal_type == CausalType::NotUmbilic) return r;
  auto guard = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      r.errors.push_back(std::string(what) + ": " + e.what());
    }
  };
  guard("branch", [&] { r.branch = metric_branch(p); });
  guard("m_u", [&] { r.m_u = umbilic_multiplicity(p, opt); });
  guard("m_omega", [&] { r.m_omega = bde_multiplicity(p, opt); });
  BdeGerm exact = principal_bde_exact(p);
  guard("discriminant", [&] {
    r.discriminant_class = classify_singularity(exact.discriminant());
  });
  if (p.ambient == Ambient::Minkowski && r.causal_type == CausalType::Lightlike) {
    guard("ld", [&] {
      JetPoly ld = special_curves(p, JetPoly::kExact).ld;
      r.ld_class = classify_singularity(ld);
      r.ld_quasihomogeneous = quasihomogeneous_weights(ld).has_value();
      r.ld_milnor = milnor_number(ld);
    });
  }
  r.config = classify_config(exact.truncated(1));
  return r;
}

}  // namespace umbilic
