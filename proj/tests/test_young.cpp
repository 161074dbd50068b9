#include <gtest/gtest.h>

#include <cmath>

#include "tworlicz/young.hpp"

using namespace tworlicz;

namespace {

// Brute-force sup_x {x y - Phi(x)} over a fine grid, refined once around the best cell.
double grid_sup_conjugate(const YoungFunction& phi, double y, double x_max = 50.0) {
  double best = 0.0, arg = 0.0;
  const int n = 200000;
  for (int i = 0; i <= n; ++i) {
    const double x = x_max * i / n;
    const double v = x * y - phi(x);
    if (v > best) best = v, arg = x;
  }
  const double h = x_max / n;
  for (int i = -2000; i <= 2000; ++i) {
    const double x = arg + h * i / 1000.0;
    if (x < 0) continue;
    best = std::max(best, x * y - phi(x));
  }
  return best;
}

std::vector<double> grid_0_10(int n) { return linear_grid(0.0, 10.0, n); }

}  // namespace

TEST(YoungCatalog, BuiltinsPassAxioms) {
  for (const auto& name : builtin_young_names()) {
    const auto phi = young_from_spec(name);
    const auto chk = check_young(phi, linear_grid(0.0, 10.0, 201));
    EXPECT_TRUE(chk.ok) << name << ": " << chk.failure;
    EXPECT_EQ(phi(0.0), 0.0) << name;
  }
}

TEST(YoungCatalog, SpecParsing) {
  EXPECT_NEAR(young_from_spec("power:3")(2.0), 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(young_from_spec("exp")(1.0), std::exp(1.0) - 2.0, 1e-15);
  EXPECT_NEAR(young_from_spec("entropy")(1.0), 2 * std::log(2.0) - 1.0, 1e-15);
  EXPECT_NEAR(young_from_spec("cosh")(1.0), std::cosh(1.0) - 1.0, 1e-15);
  EXPECT_NEAR(young_from_spec("xlog")(2.0), 2 * std::log(3.0), 1e-15);
  EXPECT_NEAR(young_from_spec("sum:square,power:3")(2.0), 4.0 + 8.0 / 3.0, 1e-14);
  EXPECT_NEAR(young_from_spec("square_compose:power:2")(2.0), 8.0, 1e-14);
  EXPECT_THROW(young_from_spec("power:1"), ParamError);
  EXPECT_THROW(young_from_spec("nope"), ParamError);
}

TEST(MakePair, LinearPhiGivesHalfSquares) {
  const auto pair = make_pair_from_phi([](double y) { return y; }, "lin");
  for (double x : {0.5, 1.0, 2.0, 7.0}) {
    EXPECT_NEAR(pair.phi(x), x * x / 2, 1e-8);
    EXPECT_NEAR(pair.psi(x), x * x / 2, 1e-8);
  }
  EXPECT_EQ(pair.phi(0.0), 0.0);
  EXPECT_EQ(pair.psi(0.0), 0.0);
}

TEST(MakePair, ExpMinusOne) {
  const auto pair = make_pair_from_phi([](double y) { return std::expm1(y); }, "expm1");
  for (double x : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(pair.phi(x), std::exp(x) - x - 1, 1e-7 * (1 + std::exp(x)));
    EXPECT_NEAR(pair.psi(x), (1 + x) * std::log1p(x) - x, 1e-7);
  }
}

TEST(MakePair, RejectsDecreasingPhi) {
  EXPECT_THROW(make_pair_from_phi([](double y) { return y < 1 ? y : 2 - y; }, "bad"),
               NonMonotoneInput);
}

TEST(Conjugate, CubeAtOneMatchesGridOracle) {
  const auto psi = conjugate(power_young(3.0));
  EXPECT_NEAR(psi(1.0), 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(psi(1.0), grid_sup_conjugate(power_young(3.0), 1.0), 1e-8);
  EXPECT_EQ(psi(0.0), 0.0);
}

TEST(Conjugate, HalfSquareSelfDual) {
  const auto psi = conjugate(power_young(2.0));
  for (double y : {0.5, 1.0, 2.0}) EXPECT_NEAR(psi(y), y * y / 2, 1e-8);
}

TEST(Conjugate, AgreesWithGridSupForAllBuiltins) {
  for (const auto& name : builtin_young_names()) {
    const auto phi = young_from_spec(name);
    const auto psi = conjugate(phi);
    for (double y : {0.3, 1.0, 2.5}) {
      const double want = grid_sup_conjugate(phi, y);
      EXPECT_NEAR(psi(y), want, 1e-6 * (1 + want)) << name << " y=" << y;
    }
  }
}

TEST(Conjugate, PowerMatchesClosedForm) {
  for (double p : {1.5, 2.0, 3.0}) {
    const double q = p / (p - 1);
    const auto psi = conjugate(power_young(p));
    for (double y : linear_grid(0.0, 10.0, 41))
      EXPECT_NEAR(psi(y), std::pow(y, q) / q, 1e-6 * (1 + std::pow(y, q))) << p << " " << y;
  }
}

TEST(Conjugate, ExpEntropyPair) {
  const auto psi = conjugate(exp_young());
  const auto ent = entropy_young();
  for (double y : linear_grid(0.0, 10.0, 41)) EXPECT_NEAR(psi(y), ent(y), 1e-6) << y;
}

TEST(Conjugate, OrderReversing) {
  // x^2/2 <= x^2 pointwise, so their complements are ordered the other way.
  const auto a = conjugate(power_young(2.0));
  const auto b = conjugate(young_from_spec("square"));
  for (double y : grid_0_10(51)) EXPECT_GE(a(y) + 1e-9, b(y)) << y;
}

TEST(Biconjugate, Residuals) {
  EXPECT_LT(biconjugate_residual(power_young(2.0), {0, 1, 2, 5}), 1e-6);
  EXPECT_LT(biconjugate_residual(xlog_young(), linear_grid(0.1, 10.0, 100)), 1e-5);
  EXPECT_EQ(biconjugate_residual(power_young(3.0), {0.0}), 0.0);
  for (const auto& name : builtin_young_names())
    EXPECT_LT(biconjugate_residual(young_from_spec(name), grid_0_10(51)), 1e-5) << name;
}

TEST(YoungInequality, GridSlackAndEquality) {
  const auto g = grid_0_10(100);
  for (const auto& name : builtin_young_names()) {
    const auto pair = pair_of(young_from_spec(name));
    EXPECT_GE(young_inequality_slack(pair, g, g), -1e-9) << name;
    // The equality locus y = phi(x); keep phi(x) moderate for exp/cosh.
    EXPECT_LT(young_equality_residual(pair, linear_grid(0.0, 5.0, 50)), 1e-6) << name;
  }
}

TEST(GrowthClass, RemarkExamples) {
  const auto g1 = growth_class(young_from_spec("sum:square,power:3"));
  EXPECT_TRUE(g1.satisfies_compact);
  const auto g1b = growth_class(young_from_spec("sum:power:2,power:3"));
  EXPECT_TRUE(g1b.satisfies_compact);

  const auto g3 = growth_class(cosh_young());
  EXPECT_TRUE(g3.satisfies_noncompact);
  EXPECT_TRUE(g3.satisfies_compact);
  EXPECT_TRUE(g3.satisfies_discrete);

  const auto g5 = growth_class(entropy_young());
  EXPECT_TRUE(g5.satisfies_discrete);
  EXPECT_FALSE(g5.satisfies_compact);
  EXPECT_FALSE(g5.satisfies_noncompact);

  const auto g_exp = growth_class(exp_young());
  EXPECT_TRUE(g_exp.satisfies_noncompact);

  // Phi = x^p/p with 1 < p < 2 is below any K x^2 at infinity but fine near 0.
  const auto g15 = growth_class(power_young(1.5));
  EXPECT_FALSE(g15.satisfies_compact);
  EXPECT_TRUE(g15.satisfies_discrete);
}

TEST(GrowthClass, WitnessIsValid) {
  for (const char* name : {"cosh", "entropy", "power:3", "exp"}) {
    const auto phi = young_from_spec(name);
    const auto g = growth_class(phi);
    if (g.satisfies_discrete) {
      for (double x : linear_grid(0.0, g.x0, 200)) EXPECT_LE(g.k_discrete * x * x, phi(x) * (1 + 1e-12)) << name;
    }
    if (g.satisfies_compact) {
      for (double x : geometric_grid(g.x0, 1.3, 40)) EXPECT_LE(g.k_compact * x * x, phi(x) * (1 + 1e-12)) << name;
    }
  }
}

TEST(SquareCompose, XlogExample) {
  const auto pair = square_compose(xlog_young());
  EXPECT_NEAR(pair.phi(1.0), std::log(2.0), 1e-15);
  EXPECT_EQ(pair.phi(0.0), 0.0);
  const auto g = growth_class(pair.phi);
  EXPECT_TRUE(g.satisfies_compact);
  for (double x : geometric_grid(1.0, 1.5, 20)) EXPECT_LE(std::log(2.0) * x * x, pair.phi(x) + 1e-12);
}

TEST(SquareCompose, HalfSquareConjugateClosedForm) {
  const auto pair = square_compose(power_young(2.0));
  for (double x : {0.5, 1.0, 2.0}) EXPECT_NEAR(pair.phi(x), std::pow(x, 4) / 2, 1e-14);
  // Psi0(y) = sup x y - x^4/2, attained at 2x^3 = y: (3/2) (y/2)^{4/3}
  for (double y : linear_grid(0.0, 10.0, 21))
    EXPECT_NEAR(pair.psi(y), 1.5 * std::pow(y / 2.0, 4.0 / 3.0), 1e-8 * (1 + y * y)) << y;
  EXPECT_TRUE(growth_class(pair.psi).satisfies_discrete);
}

TEST(LExponent, Examples) {
  EXPECT_NEAR(l_exponent(power_young(2.0)).l, 2.0, 0.01);
  EXPECT_NEAR(l_exponent(power_young(3.0)).l, 3.0, 0.01);
  EXPECT_NEAR(l_exponent(entropy_young()).l, 2.0, 0.05);
  EXPECT_NEAR(l_exponent(cosh_young()).l, 2.0, 0.05);
  const auto psi = conjugate(power_young(3.0));
  EXPECT_NEAR(l_exponent(psi).l, 1.5, 0.01);
}

TEST(LExponent, OscillatingSlopeThrows) {
  // x^2 (2 + sin(ln x)) has no stable log-log slope near 0.
  YoungFunction::Parts parts;
  parts.name = "wobble";
  parts.family = "custom";
  parts.value = [](double x) { return x <= 0 ? 0.0 : x * x * (2.0 + std::sin(3.0 * std::log(x))); };
  parts.derivative = [](double x) { return x; };
  EXPECT_THROW(l_exponent(YoungFunction(parts)), NoStableSlope);
}
