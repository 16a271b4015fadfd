#include "umbilic/local_algebra.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace umbilic;

namespace {

constexpr int E = JetPoly::kExact;
JetPoly X(int n = E) { return JetPoly::u(n); }
JetPoly Y(int n = E) { return JetPoly::v(n); }
JetPoly mono(long c, int i, int j, int n = E) { return JetPoly::monomial(c, i, j, n); }

JetPoly random_origin_jet(std::mt19937& rng, int order, int lowest = 1) {
  std::uniform_int_distribution<int> coef(-4, 4);
  JetPoly p(order);
  for (int d = lowest; d <= order; ++d)
    for (int i = 0; i <= d; ++i)
      if (rng() % 2 == 0) p.add_term(i, d - i, coef(rng));
  return p;
}

int imult(const JetPoly& f, const JetPoly& g) {
  auto r = intersection_multiplicity(f, g);
  return r.infinite ? -1 : r.value;
}

}  // namespace

TEST(IntersectionMultiplicity, Examples) {
  EXPECT_EQ(imult(X(), Y()), 1);
  EXPECT_EQ(imult(Y(), Y() - X() * X()), 2);
  EXPECT_EQ(imult(X() * Y(), X() * X() + Y() * Y()), 4);
}

TEST(IntersectionMultiplicity, MonomialPairsMatchProductOfExponents) {
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b) {
      EXPECT_EQ(imult(mono(1, a, 0), mono(1, 0, b)), a * b);
      EXPECT_EQ(oracle::intersection_number(mono(1, a, 0), mono(1, 0, b)), a * b);
    }
}

TEST(IntersectionMultiplicity, CommonComponentIsInfinite) {
  auto r = intersection_multiplicity(X() * Y(), X() * (X() + Y()));
  EXPECT_TRUE(r.infinite);
  EXPECT_TRUE(r.certified);
  auto t = intersection_multiplicity(X(5) * Y(5), X(5) * (X(5) + Y(5)));
  EXPECT_TRUE(t.infinite);
  EXPECT_FALSE(t.certified);
}

TEST(IntersectionMultiplicity, TruncatedInputsAreCertifiedOrRejected) {
  // y - x^6 against y at order 4: the answer depends on unseen terms.
  JetPoly f = Y(4), g = Y(4) + mono(1, 5, 0, 4);
  try {
    auto r = intersection_multiplicity(f, g);
    EXPECT_TRUE(r.infinite);
    EXPECT_FALSE(r.certified);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationInsufficient);
  }
  auto ok = intersection_multiplicity(Y(7), Y(7) - mono(1, 3, 0, 7));
  EXPECT_EQ(ok.value, 3);
  EXPECT_LE(ok.stabilized_at, 7);
  EXPECT_GE(ok.stabilized_at, 3);
}

TEST(IntersectionMultiplicity, RejectsGermsAwayFromOrigin) {
  try {
    intersection_multiplicity(X() + JetPoly::constant(1, E), Y());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAtOrigin);
  }
}

TEST(IntersectionMultiplicity, AgreesWithLinearAlgebraOracle) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    JetPoly f = random_origin_jet(rng, 4), g = random_origin_jet(rng, 4);
    f = f.with_order(E);
    g = g.with_order(E);
    int want = oracle::intersection_number(f, g, 14);
    auto got = intersection_multiplicity(f, g);
    if (want < 0) {
      EXPECT_TRUE(got.infinite || got.value >= 13);
      continue;
    }
    ASSERT_FALSE(got.infinite) << f.to_string() << " , " << g.to_string();
    EXPECT_EQ(got.value, want) << f.to_string() << " , " << g.to_string();
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(IntersectionMultiplicity, SymmetryIdealInvarianceAdditivity) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    JetPoly f = random_origin_jet(rng, 3).with_order(E);
    JetPoly g1 = random_origin_jet(rng, 3).with_order(E);
    JetPoly g2 = random_origin_jet(rng, 2).with_order(E);
    JetPoly h = random_origin_jet(rng, 2, 0).with_order(E);
    auto a = intersection_multiplicity(f, g1);
    EXPECT_EQ(a, intersection_multiplicity(g1, f));
    EXPECT_EQ(a, intersection_multiplicity(f, g1 + h * f));
    auto b = intersection_multiplicity(f, g2);
    auto ab = intersection_multiplicity(f, g1 * g2);
    if (a.finite() && b.finite()) {
      ASSERT_TRUE(ab.finite());
      EXPECT_EQ(ab.value, a.value + b.value);
    }
  }
}

TEST(IntersectionMultiplicity, ReparametrisationInvariance) {
  std::mt19937 rng(99);
  int done = 0;
  while (done < 30) {
    JetPoly f = random_origin_jet(rng, 3).with_order(E);
    JetPoly g = random_origin_jet(rng, 3).with_order(E);
    JetPoly h1 = random_origin_jet(rng, 2).with_order(E), h2 = random_origin_jet(rng, 2).with_order(E);
    Scalar det = h1.coeff(1, 0) * h2.coeff(0, 1) - h1.coeff(0, 1) * h2.coeff(1, 0);
    if (det == 0) continue;
    auto a = intersection_multiplicity(f, g);
    auto b = intersection_multiplicity(compose(f, h1, h2), compose(g, h1, h2));
    EXPECT_EQ(a, b);
    ++done;
  }
}

TEST(MilnorNumber, Examples) {
  EXPECT_EQ(milnor_number(X() * X() + Y() * Y()).value, 1);
  EXPECT_EQ(milnor_number(X() * X() * Y() - mono(1, 0, 4)).value, 5);
  EXPECT_EQ(oracle::intersection_number(mono(2, 1, 1), X() * X() - mono(4, 0, 3)), 5);
  EXPECT_EQ(milnor_number(X() + Y()).value, 0);
}

TEST(MilnorNumber, AdeNormalForms) {
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(milnor_number(X() * X() + mono(1, 0, k + 1)).value, k);
  for (int k = 4; k <= 9; ++k) EXPECT_EQ(milnor_number(X() * X() * Y() + mono(1, 0, k - 1)).value, k);
  EXPECT_EQ(milnor_number(mono(1, 3, 0) + mono(1, 0, 4)).value, 6);
  EXPECT_EQ(milnor_number(mono(1, 3, 0) + mono(1, 1, 3)).value, 7);
  EXPECT_EQ(milnor_number(mono(1, 3, 0) + mono(1, 0, 5)).value, 8);
}

TEST(CorankHessian, Examples) {
  auto h = corank_and_hessian(X() * X() - Y() * Y());
  EXPECT_EQ(h.corank, 0);
  EXPECT_EQ(h.det_sign, -1);
  h = corank_and_hessian(X() * X() + mono(1, 0, 3));
  EXPECT_EQ(h.corank, 1);
  EXPECT_EQ(h.det_sign, 0);
  h = corank_and_hessian(mono(1, 3, 0) + mono(1, 0, 3));
  EXPECT_EQ(h.corank, 2);
}

TEST(ClassifySingularity, NormalForms) {
  auto cls = [](const JetPoly& f) { return classify_singularity(f).to_string(); };
  EXPECT_EQ(cls(X() + Y() * Y()), "Regular");
  EXPECT_EQ(cls(X() * X() + Y() * Y()), "A1+");
  EXPECT_EQ(cls(X() * X() - Y() * Y()), "A1-");
  EXPECT_EQ(cls(X() * X() + mono(1, 0, 4)), "A3+");
  EXPECT_EQ(cls(X() * X() - mono(1, 0, 4)), "A3-");
  EXPECT_EQ(cls(-(X() * X()) - mono(1, 0, 4)), "A3+");
  EXPECT_EQ(cls(X() * X() + mono(1, 0, 3)), "A2");
  EXPECT_EQ(cls(X() * X() * Y() + mono(1, 0, 3)), "D4+");
  EXPECT_EQ(cls(X() * X() * Y() - mono(1, 0, 3)), "D4-");
  EXPECT_EQ(cls(X() * X() * Y() + mono(1, 0, 4)), "D5");
  EXPECT_EQ(cls(X() * X() * Y() + mono(1, 0, 5)), "D6+");
  EXPECT_EQ(cls(X() * X() * Y() - mono(1, 0, 5)), "D6-");
  EXPECT_EQ(cls(mono(1, 3, 0) + mono(1, 0, 4)), "E6");
  EXPECT_EQ(cls(mono(1, 3, 0) + mono(1, 1, 3)), "E7");
  EXPECT_EQ(cls(mono(1, 3, 0) + mono(1, 0, 5)), "E8");
  EXPECT_EQ(cls(mono(1, 4, 0) + mono(1, 0, 4)), "NonSimple");
  EXPECT_EQ(cls(X() * X()), "Degenerate");
}

TEST(ClassifySingularity, InvariantUnderCoordinateChanges) {
  std::mt19937 rng(3);
  std::vector<JetPoly> forms = {X() * X() + mono(1, 0, 4), X() * X() - mono(1, 0, 6),
                                X() * X() * Y() + mono(1, 0, 5), X() * X() * Y() - mono(1, 0, 3),
                                X() * X() * Y() + mono(1, 0, 4), mono(1, 3, 0) + mono(1, 1, 3)};
  for (const auto& f : forms) {
    auto base = classify_singularity(f);
    EXPECT_EQ(base.milnor, base.tag == SingTag::E7 ? 7 : base.k);
    for (int trial = 0; trial < 6; ++trial) {
      JetPoly h1 = random_origin_jet(rng, 3).with_order(E), h2 = random_origin_jet(rng, 3).with_order(E);
      Scalar det = h1.coeff(1, 0) * h2.coeff(0, 1) - h1.coeff(0, 1) * h2.coeff(1, 0);
      if (det == 0) continue;
      JetPoly g = compose(f, h1, h2).truncated(10).with_order(E);
      EXPECT_EQ(classify_singularity(g), base) << g.to_string();
    }
  }
}

TEST(QuasihomogeneousWeights, Examples) {
  auto w = quasihomogeneous_weights(X() * X() + mono(1, 0, 3));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->first, rational(1, 2));
  EXPECT_EQ(w->second, rational(1, 3));
  w = quasihomogeneous_weights(X() * X() + mono(1, 1, 2));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->second, rational(1, 4));
  EXPECT_FALSE(quasihomogeneous_weights(X() * X() + mono(1, 3, 0) + Y() * Y()));
}
