#include "umbilic/models.hpp"
#include "umbilic/surface_spec.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

using namespace umbilic;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_surface_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError(0, 0, "");
}

}  // namespace

TEST(SurfaceSpec, ParsesCubicLadderPatch) {
  auto p = parse_surface_spec(
      "# z = x^3 - x y^3\n"
      "name ladder2\n"
      "ambient euclidean\n"
      "graph z\n"
      "order 6\n"
      "coeff 3 0 1\n"
      "coeff 1 3 -1   # trailing comment\n");
  EXPECT_EQ(p.name, "ladder2");
  EXPECT_EQ(p.ambient, Ambient::Euclidean);
  EXPECT_EQ(p.axis, GraphAxis::Z);
  EXPECT_EQ(p.order, 6);
  EXPECT_EQ(p.f.coeff(3, 0), 1);
  EXPECT_EQ(p.f.coeff(1, 3), -1);
  EXPECT_EQ(p.f.terms().size(), 2u);
}

TEST(SurfaceSpec, ZeroDenominatorNamesTriple) {
  auto e = parse_error("ambient minkowski\ngraph y\ncoeff 2 0 1/2\ncoeff 0 2 1/0\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), 11);
  EXPECT_NE(std::string(e.what()).find("(0, 2, \"1/0\")"), std::string::npos) << e.what();
}

TEST(SurfaceSpec, RejectsDecimals) {
  auto e = parse_error("ambient euclidean\ngraph z\ncoeff 2 0 0.5\n");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 11);
}

TEST(SurfaceSpec, RejectsCoefficientBeyondOrder) {
  auto e = parse_error("ambient euclidean\ngraph z\norder 4\ncoeff 2 0 1\ncoeff 3 2 1\n");
  EXPECT_EQ(e.line(), 5);
  EXPECT_NE(std::string(e.what()).find("exceeds order 4"), std::string::npos);
  // order given after the offending line still applies
  auto e2 = parse_error("ambient euclidean\ngraph z\ncoeff 5 0 1\norder 4\n");
  EXPECT_EQ(e2.line(), 3);
}

TEST(SurfaceSpec, StructuralErrors) {
  EXPECT_EQ(parse_error("graph z\ncoeff 2 0 1\n").line(), 3);
  EXPECT_EQ(parse_error("ambient euclidean\ncoeff 2 0 1\n").line(), 3);
  EXPECT_EQ(parse_error("ambient euclidean\ngraph z\n").line(), 3);
  auto kw = parse_error("ambient euclidean\n  grph z\n");
  EXPECT_EQ(kw.line(), 2);
  EXPECT_EQ(kw.column(), 3);
  EXPECT_EQ(parse_error("ambient lorentz\n").column(), 9);
  EXPECT_EQ(parse_error("ambient euclidean\ngraph z\ncoeff 2 0 1\ncoeff 2 0 3\n").line(), 4);
  EXPECT_EQ(parse_error("ambient euclidean\ngraph z\ncoeff 0 0 1\n").line(), 3);
  EXPECT_EQ(parse_error("ambient euclidean\ngraph z\ncoeff 2 0\n").column(), 10);
  EXPECT_EQ(parse_error("ambient euclidean\ngraph z\ncoeff 2 0 1 7\n").column(), 13);
  EXPECT_EQ(parse_error("ambient euclidean\ngraph z\ncoeff -1 3 1\n").column(), 7);
  EXPECT_EQ(parse_error("order 1\n").column(), 7);
}

TEST(SurfaceSpec, RoundTripModelLibrary) {
  for (const auto& name : model_names()) {
    auto m = model_library(name, 4);
    if (!m.patch) continue;
    auto text = serialize_surface_spec(*m.patch);
    auto p = parse_surface_spec(text);
    EXPECT_EQ(p, *m.patch) << name;
    EXPECT_EQ(serialize_surface_spec(p), text) << name;
  }
}

TEST(SurfaceSpec, RoundTripRandomPatches) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30), deg(1, 7), pick(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    JetPoly f(JetPoly::kExact);
    int terms = 1 + trial % 9;
    for (int k = 0; k < terms; ++k) {
      int d = deg(rng);
      std::uniform_int_distribution<int> split(0, d);
      int i = split(rng);
      f.add_term(i, d - i, rational(num(rng), den(rng)));
    }
    if (f.is_zero()) f.add_term(2, 0, 1);
    MongePatch p(pick(rng) ? Ambient::Minkowski : Ambient::Euclidean, pick(rng) ? GraphAxis::Y : GraphAxis::Z, f, 7,
                 trial % 2 ? "t" + std::to_string(trial) : "");
    auto again = parse_surface_spec(serialize_surface_spec(p));
    EXPECT_EQ(again, p);
    EXPECT_EQ(parse_surface_spec(serialize_surface_spec(again)), again);
  }
}

TEST(SurfaceSpec, BundledModelFilesParse) {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(UMBILIC_SOURCE_DIR) / "models";
  ASSERT_TRUE(fs::is_directory(dir)) << dir;
  int count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".surf") continue;
    EXPECT_NO_THROW(load_surface_spec(entry.path().string())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 10);
}
