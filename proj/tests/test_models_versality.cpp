#include "umbilic/models.hpp"
#include "umbilic/versality.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace umbilic;

namespace {

Scalar q(long long n, long long d = 1) { return rational(n, d); }

int mu_of(const Model& m) {
  if (m.patch) return umbilic_multiplicity(*m.patch).value;
  return germ_multiplicity(*m.germ, *m.branch).value;
}

}  // namespace

TEST(ModelLibrary, CodimensionOneAndTwoTable) {
  EXPECT_EQ(mu_of(model_library("D1_2")), 1);
  EXPECT_EQ(mu_of(model_library("D1_23")), 2);
  EXPECT_EQ(mu_of(model_library("D2_1")), 1);
  EXPECT_EQ(mu_of(model_library("D2_2p")), 3);
  EXPECT_EQ(mu_of(model_library("D2_3")), 3);
  EXPECT_EQ(mu_of(model_library("D2_h", 2, 1)), 2);
  EXPECT_EQ(mu_of(model_library("D2_h", 2, -1)), 2);
  EXPECT_EQ(mu_of(model_library("crosscap")), 1);
}

TEST(ModelLibrary, ExpectationsMatchComputation) {
  for (const auto& name : model_names()) {
    for (int k : {1, 2, 3, 4, 5}) {
      if ((name == "Dk_pm") != (k >= 4)) continue;
      for (int sign : {1, -1}) {
        Model m = model_library(name, k, sign);
        SCOPED_TRACE(name + " k=" + std::to_string(k) + " sign=" + std::to_string(sign));
        if (m.expected_mu) EXPECT_EQ(mu_of(m), *m.expected_mu);
        if (!m.mu_candidates.empty()) {
          int mu = mu_of(m);
          EXPECT_NE(std::find(m.mu_candidates.begin(), m.mu_candidates.end(), mu), m.mu_candidates.end());
        }
        if (m.patch) EXPECT_EQ(detect_umbilic(*m.patch), m.causal);
        if (m.expected_class) {
          auto r = analyze_umbilic(*m.patch);
          auto cls = m.causal == CausalType::Lightlike ? r.ld_class : r.discriminant_class;
          ASSERT_TRUE(cls);
          EXPECT_EQ(*cls, *m.expected_class);
        }
      }
    }
  }
}

TEST(ModelLibrary, MongeFormCoefficients) {
  JetPoly f = monge_form(2, 6, 2, 6, {{"31", 6}, {"14", 24}});
  EXPECT_EQ(f.coeff(2, 0), 1);
  EXPECT_EQ(f.coeff(3, 0), 1);
  EXPECT_EQ(f.coeff(1, 2), 1);
  EXPECT_EQ(f.coeff(3, 1), 1);
  EXPECT_EQ(f.coeff(1, 4), 1);
  EXPECT_THROW(monge_form(1, 0, 0, 0, {{"21", 1}}), Error);
  EXPECT_THROW(model_library("D9"), Error);
}

TEST(LplRealisations, ClassesAndMultiplicities) {
  // A-_{2k-1} -> k, with the realisation y = x^3 + x z^(k+1).
  for (int k = 2; k <= 3; ++k) {
    auto m = model_library("timelike_Ak", k);
    auto r = analyze_umbilic(*m.patch);
    ASSERT_TRUE(r.discriminant_class);
    EXPECT_EQ(r.discriminant_class->to_string(), "A" + std::to_string(2 * k - 1) + "-");
    EXPECT_EQ(lpl_table_multiplicity(*r.discriminant_class), std::vector<int>{k});
    EXPECT_EQ(r.m_u->value, k);
  }
  for (int sign : {1, -1}) {
    auto d4 = analyze_umbilic(*model_library("Dk_pm", 4, sign).patch);
    EXPECT_EQ(d4.discriminant_class->tag, SingTag::D);
    EXPECT_EQ(d4.discriminant_class->k, 4);
    EXPECT_EQ(d4.m_u->value, 2);
  }
  auto d5 = analyze_umbilic(*model_library("Dk_pm", 5, 1).patch);
  EXPECT_EQ(d5.discriminant_class->to_string(), "D5");
  EXPECT_EQ(d5.m_u->value, 2);
  auto e7 = analyze_umbilic(*model_library("E7").patch);
  EXPECT_EQ(e7.discriminant_class->to_string(), "E7");
  EXPECT_EQ(e7.m_u->value, 3);
  // D-_6 reports its two candidates; the computed value is one of them.
  auto d6 = model_library("Dk_pm", 6, 1);
  EXPECT_EQ(d6.mu_candidates, (std::vector<int>{2, 3}));
}

TEST(ModelLibrary, InequalityHoldsOnEveryModel) {
  for (const auto& p : panel_library()) {
    SCOPED_TRACE(p.name);
    auto mu = umbilic_multiplicity(p);
    auto mw = bde_multiplicity(p);
    if (mu.infinite || mw.infinite) continue;
    EXPECT_GE(mw.value, 3 * mu.value);
  }
}

TEST(Versality, DistanceSquaredCubicIsProportionalToC) {
  CubicForm c{1, 2, 5, 0};
  MongePatch p = timelike_cubic_patch(2, c.a1, c.a2, c.a3, c.a4);
  auto centre = focal_centre(p);
  ASSERT_TRUE(centre);
  EXPECT_EQ(*centre, (Point3{0, q(1, 2), 0}));
  JetPoly j3 = distance_squared_jet(p, *centre, 3);
  for (auto [i, j] : {std::pair{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}) EXPECT_TRUE(is_zero(j3.coeff(i, j)));
  // -2 C / kappa
  EXPECT_EQ(j3.homogeneous_part(3).with_order(JetPoly::kExact), c.poly() * Scalar(-1));
}

TEST(Versality, LightlikeCentreAndCubic) {
  Scalar a22 = 2, a30 = 1, a31 = 3, a32 = -1, a33 = 5;
  MongePatch p = lightlike_patch(1, a22, a30, a31, a32, a33);
  auto centre = focal_centre(p);
  ASSERT_TRUE(centre);
  EXPECT_EQ(*centre, (Point3{-1 / (2 * a22), 0, -1 / (2 * a22)}));
  JetPoly j3 = distance_squared_jet(p, *centre, 3).with_order(JetPoly::kExact);
  JetPoly expect = JetPoly::from_terms({{{3, 0}, a30}, {{2, 1}, a31}, {{1, 2}, 2 * a22 * a22 + a32}, {{0, 3}, a33}},
                                       JetPoly::kExact) *
                   (-1 / a22);
  EXPECT_EQ(j3, expect);
}

TEST(Versality, FarPointIsRegular) {
  MongePatch p = timelike_cubic_patch(2, 1, 2, 5, 0);
  JetPoly d = distance_squared_jet(p, Point3{1, 3, 2}, 3);
  EXPECT_FALSE(is_zero(d.coeff(1, 0)) && is_zero(d.coeff(0, 1)));
}

TEST(Versality, TimelikeCaseOne) {
  auto good = d4_and_versality(strata_patch(StrataPlane::TimelikeI, 1, 1));
  EXPECT_TRUE(good.has_D4);
  EXPECT_EQ(good.versal, std::optional<bool>(true));
  // C = x (x + z)^2 has a repeated factor here.
  auto bad = d4_and_versality(strata_patch(StrataPlane::TimelikeI, 2, 1));
  EXPECT_FALSE(bad.has_D4);
  EXPECT_EQ(bad.versal, std::optional<bool>(false));
  EXPECT_GT(umbilic_multiplicity(strata_patch(StrataPlane::TimelikeI, 2, 1)).value, 1);
}

TEST(Versality, FlatUmbilicHasNoCentre) {
  auto r = d4_and_versality(*model_library("spacelike_Ak", 2).patch);
  EXPECT_FALSE(r.centre.has_value());
  EXPECT_FALSE(r.versal.has_value());
}

TEST(Versality, RankIgnoresRescalingOfCentreDirections) {
  // Scaling the patch by a homothety rescales the centre coordinates.
  for (Scalar kappa : {q(1), q(3), q(1, 4)}) {
    auto r = d4_and_versality(timelike_cubic_patch(kappa, 1, 2, 5, 0));
    EXPECT_EQ(r.rank, 10);
  }
}

TEST(Versality, SpacelikeD4OffInnerHypocycloid) {
  JetPoly inner = strata_curves(StrataPlane::Beta)[3].poly;
  for (auto [s, t] : std::vector<std::pair<Scalar, Scalar>>{{0, 0}, {-1, 0}, {q(1, 2), q(1, 3)}, {3, 0}, {2, 2}}) {
    auto r = d4_and_versality(strata_patch(StrataPlane::Beta, s, t));
    EXPECT_EQ(r.has_D4, !is_zero(detail::eval_st(inner, s, t))) << to_string(s) << "," << to_string(t);
  }
}

TEST(MongeTaylor, TimelikeExamples) {
  EXPECT_FALSE(monge_taylor_transversality(timelike_cubic_patch(2, 1, 0, 0, 0)));
  EXPECT_TRUE(monge_taylor_transversality(timelike_cubic_patch(2, 1, 0, 1, 0)));
}

TEST(MongeTaylor, TimelikePredicateAndMultiplicity) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int it = 0; it < 40; ++it) {
    Scalar a30 = d(rng), a31 = d(rng), a32 = d(rng), a33 = d(rng);
    if (a30 == 0 && a31 == 0 && a32 == 0 && a33 == 0) continue;
    MongePatch p = timelike_cubic_patch(q(d(rng) == 0 ? 1 : 2), a30, a31, a32, a33);
    bool pred = !is_zero(a32 * a32 - 3 * a33 * a31 - a31 * a31 + 3 * a32 * a30);
    EXPECT_EQ(monge_taylor_transversality(p), pred);
    EXPECT_EQ(monge_taylor_transversality(p), umbilic_multiplicity(p).value == 1);
  }
}

TEST(EquivalencePanel, FourPredicatesAgree) {
  auto panel = panel_library();
  EXPECT_GE(panel.size(), 30u);
  int types[3] = {0, 0, 0};
  for (const auto& p : panel) {
    SCOPED_TRACE(p.name);
    CausalType c = detect_umbilic(p);
    ASSERT_NE(c, CausalType::NotUmbilic);
    ++types[static_cast<int>(c)];
    auto e = equivalence_panel(p);
    EXPECT_EQ(e.mu_one, umbilic_multiplicity(p).value == 1);
    EXPECT_EQ(e.morse, e.mu_one);
    ASSERT_TRUE(e.transverse.has_value());
    EXPECT_EQ(*e.transverse, e.mu_one);
    if (e.versal) EXPECT_EQ(*e.versal, e.mu_one);
    EXPECT_TRUE(e.agree());
  }
  EXPECT_GT(types[0], 0);
  EXPECT_GT(types[1], 0);
  EXPECT_GT(types[2], 0);
}
