// Catalogue of model umbilics: the codimension one and two umbilics in
// Monge form, the cross-cap germ, multiplicity ladders in each causal type
// and realisations of simple LPL singularities.
#pragma once

#include "umbilic/analysis.hpp"
#include "umbilic/strata.hpp"
#include "umbilic/surface.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace umbilic {

struct Model {
  std::string name;
  std::string description;
  std::optional<MongePatch> patch;
  /// For models given directly as a BDE germ (the cross-cap).
  std::optional<BdeGerm> germ;
  std::optional<MetricBranch> branch;
  CausalType causal = CausalType::NotUmbilic;
  std::optional<int> expected_mu;
  /// Admissible m_u values when the class alone does not decide (D-_{2k}).
  std::vector<int> mu_candidates;
  /// Class of the discriminant (spacelike), LPL (timelike) or LD (lightlike).
  std::optional<SingularityClass> expected_class;
};

/// Monge form kappa/2 (x^2 + y^2) + a/6 x^3 + b/2 x y^2 + c/6 y^3
///   + sum d_ij / (i! j!) x^i y^j, with d keyed by "ij".
inline JetPoly monge_form(const Scalar& kappa, const Scalar& a, const Scalar& b, const Scalar& c,
                          const std::map<std::string, Scalar>& d = {}) {
  const int E = JetPoly::kExact;
  static const long fact[] = {1, 1, 2, 6, 24, 120, 720};
  JetPoly f = JetPoly::from_terms({{{2, 0}, kappa / 2},
                                   {{0, 2}, kappa / 2},
                                   {{3, 0}, a / 6},
                                   {{1, 2}, b / 2},
                                   {{0, 3}, c / 6}},
                                  E);
  for (const auto& [key, v] : d) {
    if (key.size() != 2 || key[0] < '0' || key[0] > '6' || key[1] < '0' || key[1] > '6')
      throw Error(ErrorCode::InvalidArgument, "bad Monge coefficient d" + key);
    int i = key[0] - '0', j = key[1] - '0';
    if (i + j < 4) throw Error(ErrorCode::InvalidArgument, "d" + key + " is not a higher-order coefficient");
    f.add_term(i, j, v / Scalar(fact[i] * fact[j]));
  }
  return f;
}

namespace detail {

inline JetPoly xpow(int i, int j, const Scalar& c = 1) { return JetPoly::monomial(c, i, j, JetPoly::kExact); }

inline JetPoly power(const JetPoly& p, int k) {
  JetPoly r = JetPoly::constant(1, JetPoly::kExact);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

inline Model monge_model(std::string name, std::string desc, JetPoly f, int mu) {
  Model m;
  m.name = std::move(name);
  m.description = std::move(desc);
  m.patch = MongePatch(Ambient::Euclidean, GraphAxis::Z, f, kDefaultOrder, m.name);
  m.causal = CausalType::Spacelike;
  m.expected_mu = mu;
  return m;
}

}  // namespace detail

inline std::vector<std::string> model_names() {
  return {"D1_2",         "D1_23",        "D2_1",         "D2_2p", "D2_3", "D2_h", "crosscap",
          "spacelike_Ak", "timelike_Ak",  "lightlike_Ak", "Dk_pm", "E7"};
}

/// A concrete representative. `k` indexes the ladders and D_k; `sign` picks
/// D_k^+ or D_k^- and the variant of D2_h.
inline Model model_library(const std::string& name, int k = 2, int sign = 1) {
  using detail::power;
  using detail::xpow;
  const int E = JetPoly::kExact;
  JetPoly x = JetPoly::u(E), y = JetPoly::v(E);
  if (name == "D1_2") return detail::monge_model(name, "kappa=1 a=2 b=1 c=1", monge_form(1, 2, 1, 1), 1);
  if (name == "D1_23")
    return detail::monge_model(name, "kappa=1 a=b=c=1 d31=1 (chi=-1)", monge_form(1, 1, 1, 1, {{"31", 1}}), 2);
  if (name == "D2_1") return detail::monge_model(name, "kappa=1 a=2 b=1 c=0", monge_form(1, 2, 1, 0), 1);
  if (name == "D2_2p")
    return detail::monge_model(name, "kappa=1 a=b=c=1 d31=2 d32=-40 (chi=0, xi=-22)",
                               monge_form(1, 1, 1, 1, {{"31", 2}, {"32", -40}}), 3);
  if (name == "D2_3")
    return detail::monge_model(name, "kappa=1 a=b=c=1 d31=2 (chi=0, xi=18)", monge_form(1, 1, 1, 1, {{"31", 2}}),
                               3);
  if (name == "D2_h") {
    if (sign > 0)
      return detail::monge_model(name, "kappa=1 a=b=0 c=1 d31=1", monge_form(1, 0, 0, 1, {{"31", 1}}), 2);
    return detail::monge_model(name, "kappa=1 b=c=0 a=1 d13=1", monge_form(1, 1, 0, 0, {{"13", 1}}), 2);
  }
  if (name == "crosscap") {
    Model m;
    m.name = name;
    m.description = "BDE germ (0, -x/2, y)";
    m.germ = BdeGerm{JetPoly(E), x * rational(-1, 2), y};
    m.branch = MetricBranch::E;
    m.expected_mu = 1;
    return m;
  }
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "ladder index must be at least 1");
  if (name == "spacelike_Ak") {
    Model m = detail::monge_model(name, "z = x^3 - x y^(k+1)", xpow(3, 0) - xpow(1, k + 1), k);
    m.expected_class = SingularityClass{SingTag::A, 2 * k - 1, 1, 2 * k - 1};
    return m;
  }
  if (name == "timelike_Ak") {
    Model m;
    m.name = name;
    m.description = "y = x^3 + x z^(k+1)";
    m.patch = MongePatch(Ambient::Minkowski, GraphAxis::Y, xpow(3, 0) + xpow(1, k + 1), kDefaultOrder, name);
    m.causal = CausalType::Timelike;
    m.expected_mu = k;
    m.expected_class = SingularityClass{SingTag::A, 2 * k - 1, -1, 2 * k - 1};
    return m;
  }
  if (name == "lightlike_Ak") {
    Model m;
    m.name = name;
    m.description = "z = 3/5 x + 4/5 y + x^3/3 + y^(k+2)/(k+2)";
    JetPoly f = x * rational(3, 5) + y * rational(4, 5) + xpow(3, 0, rational(1, 3)) + xpow(0, k + 2, rational(1, k + 2));
    m.patch = MongePatch(Ambient::Minkowski, GraphAxis::Z, f, std::max(kDefaultOrder, k + 4), name);
    m.causal = CausalType::Lightlike;
    m.expected_mu = k;
    m.expected_class = SingularityClass{SingTag::A, k, k % 2 == 1 ? 1 : 0, k};
    return m;
  }
  if (name == "Dk_pm") {
    if (k < 4) throw Error(ErrorCode::InvalidArgument, "D_k needs k >= 4");
    Model m;
    m.name = name;
    m.description = std::string("y = (x^2 - z^2) + (x - z)(x + z)^2 ") + (sign > 0 ? "+" : "-") + " (x - z)^k";
    JetPoly f = x * x - y * y + (x - y) * power(x + y, 2) + power(x - y, k) * Scalar(sign > 0 ? 1 : -1);
    m.patch = MongePatch(Ambient::Minkowski, GraphAxis::Y, f, std::max(kDefaultOrder, k + 3), name);
    m.causal = CausalType::Timelike;
    // Three real branches for the + sign, one for the - sign.
    int cls_sign = k % 2 == 1 ? 0 : (sign > 0 ? -1 : 1);
    m.expected_class = SingularityClass{SingTag::D, k, cls_sign, k};
    m.mu_candidates = lpl_table_multiplicity(*m.expected_class);
    if (m.mu_candidates.size() == 1) m.expected_mu = m.mu_candidates.front();
    return m;
  }
  if (name == "E7") {
    Model m;
    m.name = name;
    m.description = "y = (x^2 - z^2) + (x - z)^3 + (x + z)^5";
    JetPoly f = x * x - y * y + power(x - y, 3) + power(x + y, 5);
    m.patch = MongePatch(Ambient::Minkowski, GraphAxis::Y, f, 9, name);
    m.causal = CausalType::Timelike;
    m.expected_mu = 3;
    m.expected_class = SingularityClass{SingTag::E7, 7, 0, 7};
    return m;
  }
  throw Error(ErrorCode::UnknownModel, "no model named '" + name + "'");
}

/// Lightlike umbilic z = e x + a22 y^2 + a30 x^3 + a31 x^2 y + a32 x y^2 + a33 y^3.
inline MongePatch lightlike_patch(int e, const Scalar& a22, const Scalar& a30, const Scalar& a31, const Scalar& a32,
                                  const Scalar& a33) {
  JetPoly f = JetPoly::from_terms(
      {{{1, 0}, Scalar(e)}, {{0, 2}, a22}, {{3, 0}, a30}, {{2, 1}, a31}, {{1, 2}, a32}, {{0, 3}, a33}}, JetPoly::kExact);
  return MongePatch(Ambient::Minkowski, GraphAxis::Z, f);
}

/// Timelike umbilic y = kappa/2 (x^2 - z^2) + C(x, z).
inline MongePatch timelike_cubic_patch(const Scalar& kappa, const Scalar& a30, const Scalar& a31, const Scalar& a32,
                                       const Scalar& a33) {
  JetPoly f = JetPoly::from_terms(
      {{{2, 0}, kappa / 2}, {{0, 2}, -kappa / 2}, {{3, 0}, a30}, {{2, 1}, a31}, {{1, 2}, a32}, {{0, 3}, a33}},
      JetPoly::kExact);
  return MongePatch(Ambient::Minkowski, GraphAxis::Y, f);
}

/// Patches of all three causal types used to cross-check the equivalent
/// characterisations of m_u = 1.
inline std::vector<MongePatch> panel_library() {
  std::vector<MongePatch> out;
  auto add = [&](MongePatch p, std::string name) {
    p.name = std::move(name);
    out.push_back(std::move(p));
  };
  const Scalar h = rational(1, 2);
  // Spacelike: beta-plane samples on and off the exceptional curves.
  for (auto [s, t] : std::vector<std::pair<Scalar, Scalar>>{{0, 0},
                                                            {0, 4},
                                                            {rational(-7, 2), 0},
                                                            {1, 1},
                                                            {3, 0},
                                                            {rational(9, 5), rational(12, 5)},
                                                            {-1, 0},
                                                            {rational(5, 2), h}})
    add(strata_patch(StrataPlane::Beta, s, t), "beta(" + to_string(s) + "," + to_string(t) + ")");
  for (const char* n : {"D1_2", "D1_23", "D2_1", "D2_2p", "D2_3"}) add(*model_library(n).patch, n);
  add(*model_library("D2_h", 2, 1).patch, "D2_h+");
  add(*model_library("D2_h", 2, -1).patch, "D2_h-");
  for (int k = 1; k <= 3; ++k) add(*model_library("spacelike_Ak", k).patch, "spacelike_A" + std::to_string(k));
  // Timelike.
  for (auto [s, t] : std::vector<std::pair<Scalar, Scalar>>{
           {1, 1}, {2, 1}, {2, 5}, {-1, rational(1, 4)}, {0, rational(-5, 4)}, {rational(3, 2), rational(-3, 4)}})
    add(strata_patch(StrataPlane::TimelikeI, s, t), "timelike_i(" + to_string(s) + "," + to_string(t) + ")");
  add(strata_patch(StrataPlane::TimelikeIIIPlus, 1, 3), "timelike_iii+(1,3)");
  add(strata_patch(StrataPlane::TimelikeIIIPlus, 2, 1), "timelike_iii+(2,1)");
  add(strata_patch(StrataPlane::TimelikeIIIMinus, 2, 5), "timelike_iii-(2,5)");
  add(timelike_cubic_patch(1, 0, 1, 0, 0), "timelike_iv");
  add(timelike_cubic_patch(2, 1, 0, 1, 0), "timelike(1,0,1,0)");
  add(timelike_cubic_patch(2, 1, 0, 0, 0), "timelike(1,0,0,0)");
  for (int k = 1; k <= 3; ++k) add(*model_library("timelike_Ak", k).patch, "timelike_A" + std::to_string(k));
  add(*model_library("Dk_pm", 4, 1).patch, "D4+");
  add(*model_library("Dk_pm", 5, -1).patch, "D5-");
  add(*model_library("E7").patch, "E7");
  // Lightlike, both signs of the linear term.
  add(lightlike_patch(1, 1, 1, 0, 0, 1), "lightlike+(1;1,0,0,1)");
  add(lightlike_patch(-1, 1, 1, 1, 1, 0), "lightlike-(1;1,1,1,0)");
  add(lightlike_patch(1, 2, 1, 2, -4, 0), "lightlike+(2;1,2,-4,0)");
  // 6 a22^2 a30 +- 3 a30 a32 -+ a31^2 vanishes for one of the two signs.
  add(lightlike_patch(1, 1, 1, 0, -2, 1), "lightlike+(1;1,0,-2,1)");
  add(lightlike_patch(1, 1, 1, 0, 2, 1), "lightlike+(1;1,0,2,1)");
  add(lightlike_patch(-1, 1, 1, 0, -2, 1), "lightlike-(1;1,0,-2,1)");
  add(lightlike_patch(-1, 1, 1, 0, 2, 1), "lightlike-(1;1,0,2,1)");
  add(lightlike_patch(1, h, 1, 1, 0, 1), "lightlike+(1/2;1,1,0,1)");
  for (int k = 1; k <= 3; ++k) add(*model_library("lightlike_Ak", k).patch, "lightlike_A" + std::to_string(k));
  return out;
}

}  // namespace umbilic
