#include "umbilic/analysis.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace umbilic;

namespace {

constexpr int E = JetPoly::kExact;
JetPoly X() { return JetPoly::u(E); }
JetPoly Y() { return JetPoly::v(E); }
JetPoly mono(const Scalar& c, int i, int j) { return JetPoly::monomial(c, i, j, E); }

MongePatch spacelike(Ambient amb, const Scalar& kappa, const Scalar& s, const Scalar& t) {
  JetPoly f = (X() * X() + Y() * Y()) * (kappa / 2) + mono(1 + s, 3, 0) - mono(t, 2, 1) + mono(s - 3, 1, 2) -
              mono(t, 0, 3);
  return MongePatch(amb, GraphAxis::Z, f);
}

MongePatch timelike(const Scalar& kappa, const JetPoly& cubic) {
  return MongePatch(Ambient::Minkowski, GraphAxis::Y, (X() * X() - Y() * Y()) * (kappa / 2) + cubic);
}

// j^1 of a jet as the pair (coefficient of u, coefficient of v).
std::pair<Scalar, Scalar> lin(const JetPoly& p) { return {p.coeff(1, 0), p.coeff(0, 1)}; }

void expect_linear(const JetPoly& got, const Scalar& cu, const Scalar& cv, const Scalar& factor) {
  EXPECT_EQ(got.constant_term(), 0);
  EXPECT_EQ(lin(got), std::make_pair(factor * cu, factor * cv)) << got.to_string();
}

std::vector<Scalar> grid() {
  return {Scalar(0), Scalar(1), Scalar(-2), rational(1, 3), rational(-5, 2), Scalar(3)};
}

}  // namespace

TEST(FundamentalForms, Examples) {
  MongePatch e(Ambient::Euclidean, GraphAxis::Z, (X() * X() + Y() * Y()) * rational(1, 2));
  auto ff = fundamental_forms_exact(e);
  EXPECT_EQ(ff.E, JetPoly::constant(1, E) + X() * X());
  EXPECT_EQ(ff.F, X() * Y());
  EXPECT_EQ(ff.G, JetPoly::constant(1, E) + Y() * Y());

  MongePatch l(Ambient::Minkowski, GraphAxis::Z, X() * rational(3, 5) + Y() * rational(4, 5) + mono(1, 3, 0));
  EXPECT_EQ(fundamental_forms(l, 0).E.constant_term(), rational(16, 25));

  auto t = fundamental_forms(timelike(1, JetPoly(E)), 0);
  EXPECT_EQ(t.E.constant_term(), 1);
  EXPECT_EQ(t.F.constant_term(), 0);
  EXPECT_EQ(t.G.constant_term(), -1);
}

TEST(FundamentalForms, LinearIdentityAndNonvanishingMetric) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    JetPoly f(E);
    for (int d = 1; d <= 4; ++d)
      for (int i = 0; i <= d; ++i)
        if (rng() % 2) f.add_term(i, d - i, rational(coef(rng), 2));
    for (Ambient amb : {Ambient::Euclidean, Ambient::Minkowski})
      for (GraphAxis ax : {GraphAxis::Z, GraphAxis::Y}) {
        MongePatch p(amb, ax, f);
        auto ff = fundamental_forms_exact(p);
        BdeGerm w = bde_from_forms(ff);
        EXPECT_EQ(ff.G * w.c, ff.F * w.b - ff.E * w.a);
        bool some = !is_zero(ff.E.constant_term()) || !is_zero(ff.F.constant_term()) ||
                    !is_zero(ff.G.constant_term());
        EXPECT_TRUE(some);
      }
  }
}

TEST(SpecialCurves, Examples) {
  MongePatch e(Ambient::Euclidean, GraphAxis::Z, (X() * X() + Y() * Y()) * rational(1, 2) + mono(1, 3, 0));
  EXPECT_LT(special_curves(e).ld.constant_term(), 0);
  // On a Minkowski z-graph F^2 - EG = f_x^2 + f_y^2 - 1.
  JetPoly f = X() * rational(3, 5) + Y() * rational(4, 5) + mono(rational(1, 3), 3, 0) + mono(2, 1, 2);
  MongePatch l(Ambient::Minkowski, GraphAxis::Z, f);
  JetPoly fx = f.derive(Var::U), fy = f.derive(Var::V);
  EXPECT_EQ(special_curves(l, E).ld, fx * fx + fy * fy - JetPoly::constant(1, E));
  // Lightlike coordinates u = x - z, v = x + z make E = G = 0 at the origin; then delta = 4 l n.
  MongePatch t = timelike(2, mono(1, 3, 0));
  auto ff = fundamental_forms(t, 0);
  EXPECT_EQ(ff.E.constant_term() + ff.G.constant_term(), 0);
}

TEST(PrincipalBde, SpacelikeOneJet) {
  // Twice the normal-form 1-jet (tx + (3-s)y, -2((s+3)x + ty), -(tx + (3-s)y)), for every kappa.
  for (Ambient amb : {Ambient::Euclidean, Ambient::Minkowski})
    for (const Scalar& s : grid())
      for (const Scalar& t : grid())
        for (const Scalar& k : {Scalar(1), rational(-3, 2)}) {
          BdeGerm w = principal_bde(spacelike(amb, k, s, t), 1);
          expect_linear(w.a, t, 3 - s, 2);
          expect_linear(w.b, -2 * (s + 3), -2 * t, 2);
          expect_linear(w.c, -t, -(3 - s), 2);
        }
}

TEST(PrincipalBde, TimelikeOneJets) {
  // The four reduced cubic forms; the computed 1-jet is -2 times the listed one.
  for (const Scalar& s : grid())
    for (const Scalar& t : grid()) {
      BdeGerm w = principal_bde(timelike(1, X() * (X() * X() + X() * Y() * s + Y() * Y() * t)), 1);
      expect_linear(w.a, s, t, -2);
      expect_linear(w.b, 3 + t, s, -2);
      expect_linear(w.c, s, t, -2);

      w = principal_bde(timelike(1, Y() * (X() * X() * t + X() * Y() * s + Y() * Y())), 1);
      expect_linear(w.a, t, s, -2);
      expect_linear(w.b, s, 3 + t, -2);
      expect_linear(w.c, t, s, -2);

      for (int e : {1, -1}) {
        JetPoly cubic = (X() + Y() * Scalar(e)) * (X() * X() + X() * Y() * s + Y() * Y() * t);
        w = principal_bde(timelike(1, cubic), 1);
        expect_linear(w.a, s + e, t + e * s, -2);
        expect_linear(w.b, 3 + e * s + t, s + 3 * e * t + e, -2);
        expect_linear(w.c, s + e, t + e * s, -2);
      }
    }
  BdeGerm w = principal_bde(timelike(1, X() * X() * Y()), 1);
  expect_linear(w.a, 1, 0, -2);
  expect_linear(w.b, 0, 1, -2);
  expect_linear(w.c, 1, 0, -2);
}

TEST(PrincipalBde, LightlikeOneJet) {
  std::vector<std::array<Scalar, 5>> samples = {
      {1, 0, 0, 0, 0}, {2, 1, -1, 3, 1}, {rational(1, 2), 2, 5, -1, 0}, {-1, rational(1, 3), 1, 1, 2}};
  for (const auto& c : samples) {
    const Scalar &a22 = c[0], &a30 = c[1], &a31 = c[2], &a32 = c[3], &a33 = c[4];
    JetPoly rest = mono(a22, 0, 2) + mono(a30, 3, 0) + mono(a31, 2, 1) + mono(a32, 1, 2) + mono(a33, 0, 3);
    MongePatch minus(Ambient::Minkowski, GraphAxis::Z, rest - X());
    ASSERT_EQ(detect_umbilic(minus), CausalType::Lightlike);
    BdeGerm w = principal_bde(minus, 1);
    expect_linear(w.a, -a31, 2 * a22 * a22 - a32, 2);
    expect_linear(w.b, 3 * a30, a31, -2);
    EXPECT_TRUE(w.c.is_zero());

    MongePatch plus(Ambient::Minkowski, GraphAxis::Z, rest + X());
    w = principal_bde(plus, 1);
    expect_linear(w.a, a31, 2 * a22 * a22 + a32, -2);
    expect_linear(w.b, 3 * a30, a31, -2);
    EXPECT_TRUE(w.c.is_zero());
  }
}

TEST(DetectUmbilic, CausalTypes) {
  EXPECT_EQ(detect_umbilic(spacelike(Ambient::Euclidean, 1, 0, 0)), CausalType::Spacelike);
  EXPECT_EQ(detect_umbilic(spacelike(Ambient::Minkowski, 2, 1, 1)), CausalType::Spacelike);
  EXPECT_EQ(detect_umbilic(timelike(1, mono(1, 3, 0))), CausalType::Timelike);
  MongePatch l(Ambient::Minkowski, GraphAxis::Z, X() * rational(3, 5) + Y() * rational(4, 5) + mono(1, 3, 0));
  EXPECT_EQ(detect_umbilic(l), CausalType::Lightlike);
  MongePatch n(Ambient::Euclidean, GraphAxis::Z, X() * X() + Y() * Y() * Scalar(2));
  EXPECT_EQ(detect_umbilic(n), CausalType::NotUmbilic);
}

TEST(UmbilicMultiplicity, Ladders) {
  for (int k = 1; k <= 4; ++k) {
    MongePatch sp(Ambient::Euclidean, GraphAxis::Z, mono(1, 3, 0) - mono(1, 1, k + 1));
    EXPECT_EQ(umbilic_multiplicity(sp).value, k);
    MongePatch tl(Ambient::Minkowski, GraphAxis::Y, mono(1, 3, 0) + mono(1, 1, k + 1));
    EXPECT_EQ(detect_umbilic(tl), CausalType::Timelike);
    EXPECT_EQ(umbilic_multiplicity(tl).value, k);
  }
  for (int k = 1; k <= 3; ++k) {
    JetPoly f = X() * rational(3, 5) + Y() * rational(4, 5) + mono(rational(1, 3), 3, 0) +
                mono(rational(1, k + 2), 0, k + 2);
    MongePatch p(Ambient::Minkowski, GraphAxis::Z, f);
    EXPECT_EQ(detect_umbilic(p), CausalType::Lightlike);
    EXPECT_EQ(umbilic_multiplicity(p).value, k);
    EXPECT_EQ(milnor_number(special_curves(p, E).ld).value, k);
  }
}

TEST(UmbilicMultiplicity, AgreesWithOracleOnBranchPair) {
  MongePatch sp(Ambient::Euclidean, GraphAxis::Z, mono(1, 3, 0) - mono(1, 1, 3));
  BdeGerm w = principal_bde_exact(sp);
  EXPECT_EQ(oracle::intersection_number(w.b, w.c), 2);
}

TEST(UmbilicMultiplicity, GenericSpacelikeIsOne) {
  for (const Scalar& s : grid())
    for (const Scalar& t : grid()) {
      MongePatch p = spacelike(Ambient::Euclidean, 1, s, t);
      auto m = umbilic_multiplicity(p);
      if (s * s + t * t != 9)
        EXPECT_EQ(m.value, 1);
      else
        EXPECT_TRUE(m.infinite || m.value > 1);
    }
}

TEST(UmbilicMultiplicity, BranchIndependence) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coef(-3, 3);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    JetPoly f = (X() * X() - Y() * Y()) * rational(coef(rng), 2);
    for (int d = 3; d <= 4; ++d)
      for (int i = 0; i <= d; ++i)
        if (rng() % 2) f.add_term(i, d - i, coef(rng));
    MongePatch p(Ambient::Minkowski, GraphAxis::Y, f);
    if (detect_umbilic(p) == CausalType::NotUmbilic) continue;
    BdeGerm w = principal_bde_exact(p);
    auto e = germ_multiplicity(w, MetricBranch::E);
    auto g = germ_multiplicity(w, MetricBranch::G);
    EXPECT_EQ(e.infinite, g.infinite);
    if (e.finite()) EXPECT_EQ(e.value, g.value);
    ++compared;
  }
  EXPECT_GT(compared, 20);
}

TEST(UmbilicMultiplicity, InvariantUnderAmbientIsometries) {
  // Rotation by (3/5, 4/5) of the xy-plane; a boost with cosh = 5/4, sinh = 3/4 in the xz-plane.
  Scalar c(3, 5), s(4, 5), ch(5, 4), sh(3, 4);
  std::vector<JetPoly> cubics = {mono(1, 3, 0) - mono(1, 1, 2), mono(1, 3, 0) - mono(1, 1, 3),
                                 mono(2, 3, 0) + mono(1, 2, 1) - mono(1, 0, 3)};
  for (const JetPoly& f : cubics) {
    JetPoly g = compose(f, X() * c - Y() * s, X() * s + Y() * c);
    for (Ambient amb : {Ambient::Euclidean, Ambient::Minkowski}) {
      MongePatch a(amb, GraphAxis::Z, (X() * X() + Y() * Y()) + f), b(amb, GraphAxis::Z, (X() * X() + Y() * Y()) + g);
      EXPECT_EQ(umbilic_multiplicity(a), umbilic_multiplicity(b));
    }
    JetPoly h = compose(f, X() * ch + Y() * sh, X() * sh + Y() * ch);
    MongePatch ta(Ambient::Minkowski, GraphAxis::Y, (X() * X() - Y() * Y()) + f);
    MongePatch tb(Ambient::Minkowski, GraphAxis::Y, (X() * X() - Y() * Y()) + h);
    EXPECT_EQ(umbilic_multiplicity(ta).value, umbilic_multiplicity(tb).value);
  }
}

TEST(BdeMultiplicity, Examples) {
  // Star: eq. 1-jet with s = t = 0.
  BdeGerm star{Y() * Scalar(3), X() * Scalar(-6), Y() * Scalar(-3)};
  EXPECT_EQ(bde_multiplicity(star).value, 3);
  // E = G = 0 with l = u, n = v: delta = 4 u v.
  BdeGerm tl{Y(), JetPoly(E), -X()};
  EXPECT_EQ(bde_multiplicity(tl).value, 3);
  // Well folded, one folded singularity.
  BdeGerm wf{JetPoly::constant(1, E), JetPoly(E), X() * X() - Y()};
  EXPECT_EQ(bde_multiplicity(wf).value, 1);
}

TEST(BdeMultiplicity, InequalityOnLadders) {
  for (int k = 1; k <= 3; ++k) {
    MongePatch sp(Ambient::Euclidean, GraphAxis::Z, mono(1, 3, 0) - mono(1, 1, k + 1));
    auto c = check_inequality(sp);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.m_u.value, k);
    EXPECT_GE(c.m_omega.value, 3 * k);
  }
  auto g = check_inequality(spacelike(Ambient::Euclidean, 1, 0, 0));
  EXPECT_EQ(g.m_u.value, 1);
  EXPECT_EQ(g.m_omega.value, 3);
  auto t = check_inequality(timelike(2, mono(1, 3, 0) + mono(1, 1, 2)));
  EXPECT_EQ(t.m_u.value, 1);
  EXPECT_EQ(t.m_omega.value, 3);
}

TEST(PhiAlpha, Examples) {
  BdeGerm star{Y() * Scalar(3), X() * Scalar(-6), Y() * Scalar(-3)};
  auto pa = phi_alpha(star);
  EXPECT_EQ(pa.phi, UPoly({0, -9, 0, 3}));
  EXPECT_EQ(pa.alpha, UPoly({-3, 0, 3}));
  for (const Scalar& s : grid())
    for (const Scalar& t : grid()) {
      BdeGerm w = principal_bde(timelike(1, X() * (X() * X() + X() * Y() * s + Y() * Y() * t)), 1);
      auto q = phi_alpha(w);
      // phi is -2 (t p^3 + 2 s p^2 + (2t + 3) p + s); the listed alpha 2t p^2 + 3 s p + t + 3 is
      // twice the alpha of the listed 1-jet, so here the factor is -1.
      EXPECT_EQ(q.phi, UPoly({s, 2 * t + 3, 2 * s, t}) * UPoly({-2}));
      EXPECT_EQ(q.alpha, UPoly({t + 3, 3 * s, 2 * t}) * UPoly({-1}));
    }
  try {
    phi_alpha(BdeGerm{X() * X(), JetPoly(E), Y() * Y()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroOneJet);
  }
}

TEST(ClassifyConfig, SpacelikeExamples) {
  auto cfg = [](const Scalar& s, const Scalar& t) {
    return classify_config(principal_bde(spacelike(Ambient::Euclidean, 1, s, t), 1));
  };
  EXPECT_EQ(cfg(0, 0).to_string(), "star");
  EXPECT_EQ(cfg(0, 4).to_string(), "lemon");
  EXPECT_EQ(cfg(3, 0).kind, ConfigKind::Degenerate);
  // Between the circle and the outer hypocycloid on the s-axis.
  EXPECT_EQ(cfg(rational(-7, 2), 0).to_string(), "monstar");
}

TEST(ClassifyConfig, RootTypesFollowSignRule) {
  auto c = classify_config(BdeGerm{Y() * Scalar(3), X() * Scalar(-6), Y() * Scalar(-3)});
  ASSERT_EQ(c.roots.size(), 3u);
  for (const auto& r : c.roots) EXPECT_EQ(r.type, RootType::Saddle);
  EXPECT_EQ(classify_config(BdeGerm{X() * X(), X(), Y()}).kind, ConfigKind::Degenerate);
}

TEST(ClassifyConfig, TimelikeCounts) {
  auto c = classify_config(principal_bde(timelike(1, X() * (X() * X() + Y() * Y())), 1));
  EXPECT_EQ(c.kind, ConfigKind::Timelike) << c.reason;
  EXPECT_TRUE(c.saddles + c.nodes == 1 || c.saddles + c.nodes == 3);
}

TEST(LplTable, Candidates) {
  EXPECT_EQ(lpl_table_multiplicity({SingTag::A, 3, -1, 3}), std::vector<int>{2});
  EXPECT_EQ(lpl_table_multiplicity({SingTag::A, 5, -1, 5}), std::vector<int>{3});
  EXPECT_EQ(lpl_table_multiplicity({SingTag::D, 5, 0, 5}), std::vector<int>{2});
  EXPECT_EQ(lpl_table_multiplicity({SingTag::D, 6, 1, 6}), std::vector<int>{2});
  EXPECT_EQ(lpl_table_multiplicity({SingTag::D, 6, -1, 6}), (std::vector<int>{2, 3}));
  EXPECT_EQ(lpl_table_multiplicity({SingTag::E7, 7, 0, 7}), std::vector<int>{3});
}

TEST(AnalyzeUmbilic, LightlikeReportHasSingularLd) {
  JetPoly f = X() * rational(3, 5) + Y() * rational(4, 5) + mono(rational(1, 3), 3, 0) + mono(rational(1, 4), 0, 4);
  auto r = analyze_umbilic(MongePatch(Ambient::Minkowski, GraphAxis::Z, f));
  EXPECT_EQ(r.causal_type, CausalType::Lightlike);
  ASSERT_TRUE(r.ld_class);
  EXPECT_NE(r.ld_class->tag, SingTag::Regular);
  ASSERT_TRUE(r.m_u);
  EXPECT_EQ(r.m_u->value, 2);
}
