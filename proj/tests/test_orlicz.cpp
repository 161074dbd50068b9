#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tworlicz/orlicz.hpp"

using namespace tworlicz;

namespace {

const std::vector<std::string> kPhis{"power:2", "power:3", "power:1.5", "xlog", "exp", "cosh", "entropy"};

DiscreteFunction ones_at(std::initializer_list<std::int64_t> xs, double v = 1.0) {
  DiscreteFunction f(1);
  for (auto x : xs) f.set(Point{x}, v);
  return f;
}

// Inverse of an increasing Psi by bisection.
double psi_inverse(const YoungFunction& psi, double b) {
  double lo = 0, hi = 1;
  while (psi(hi) < b) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (psi(m) < b ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

// sup { sum |f_i| v_i : sum Psi(v_i) <= 1 } over a simplex grid of the budget split,
// for supports of size <= 3. A lower bound that converges to the Orlicz norm.
double sup_definition_norm(const YoungFunction& psi, const std::vector<double>& a, int steps) {
  const std::size_t n = a.size();
  double best = 0;
  std::vector<double> inv(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) inv[static_cast<std::size_t>(k)] = psi_inverse(psi, static_cast<double>(k) / steps);
  if (n == 1) return a[0] * inv.back();
  for (int i = 0; i <= steps; ++i) {
    if (n == 2) {
      best = std::max(best, a[0] * inv[i] + a[1] * inv[steps - i]);
      continue;
    }
    for (int j = 0; i + j <= steps; ++j)
      best = std::max(best, a[0] * inv[i] + a[1] * inv[j] + a[2] * inv[steps - i - j]);
  }
  return best;
}

}  // namespace

TEST(DiscreteFunctionType, NoStoredZeros) {
  DiscreteFunction f(2);
  f.set(Point{1, 1}, 2.0);
  f.set(Point{1, 1}, 0.0);
  EXPECT_TRUE(f.is_zero());
  f.add(Point{0, 0}, 1.0);
  f.add(Point{0, 0}, -1.0);
  EXPECT_TRUE(f.is_zero());
  EXPECT_THROW(f.set(Point{1}, 1.0), DimensionError);
}

TEST(Modular, Examples) {
  EXPECT_EQ(modular(power_young(2.0), DiscreteFunction(1)), 0.0);
  EXPECT_NEAR(modular(power_young(2.0), ones_at({0, 5})), 1.0, 1e-15);
  EXPECT_NEAR(modular(xlog_young(), ones_at({3}, 2.0)), 2 * std::log(3.0), 1e-15);
}

TEST(Luxemburg, Examples) {
  EXPECT_EQ(luxemburg_norm(power_young(2.0), DiscreteFunction(1)), 0.0);
  EXPECT_NEAR(luxemburg_norm(power_young(2.0), ones_at({0, 5})), 1.0, 1e-12);
}

TEST(Luxemburg, PowerClosedForm) {
  std::mt19937_64 rng(21);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int i = 0; i < 50; ++i) {
      const auto f = random_function(rng, 2, 10, 15);
      double sp = 0;
      for (const auto& [_, v] : f.entries()) sp += std::pow(std::abs(v), p);
      const double want = std::pow(sp, 1 / p) * std::pow(p, -1 / p);
      EXPECT_NEAR(luxemburg_norm(power_young(p), f), want, 1e-9 * want);
    }
  }
}

TEST(Luxemburg, UnitBallMatchesModular) {
  std::mt19937_64 rng(22);
  for (const auto& name : kPhis) {
    const auto phi = young_from_spec(name);
    const auto f = random_function(rng, 1, 10, 8);
    const double n = luxemburg_norm(phi, f);
    for (double target : {0.9, 1.0, 1.1}) {
      const auto g = f.scaled(target / n);
      const double m = modular(phi, g);
      if (target < 1.0) {
        EXPECT_LT(m, 1.0) << name;
      } else if (target > 1.0) {
        EXPECT_GT(m, 1.0) << name;
      } else {
        EXPECT_NEAR(m, 1.0, 1e-9) << name;
      }
    }
  }
}

TEST(Norms, Axioms) {
  std::mt19937_64 rng(23);
  for (const auto& name : kPhis) {
    const auto phi = young_from_spec(name);
    for (int i = 0; i < 500; ++i) {
      const auto f = random_function(rng, 1, 10, 6);
      const auto g = random_function(rng, 1, 10, 6);
      DiscreteFunction h = f;
      for (const auto& [p, v] : g.entries()) h.add(p, v);
      for (auto kind : {NormKind::Luxemburg, NormKind::Orlicz}) {
        const double nf = norm(kind, phi, f), ng = norm(kind, phi, g);
        EXPECT_GE(nf + ng - norm(kind, phi, h), -1e-9 * (nf + ng)) << name;
        if (i % 25 == 0) {
          EXPECT_NEAR(norm(kind, phi, f.scaled(3.0)), 3 * nf, 1e-9 * nf) << name;
          EXPECT_NEAR(norm(kind, phi, f.scaled(Complex(0, -0.5))), 0.5 * nf, 1e-9 * nf) << name;
        }
      }
    }
  }
}

TEST(Orlicz, Examples) {
  EXPECT_EQ(orlicz_norm(power_young(2.0), DiscreteFunction(1)), 0.0);
  EXPECT_NEAR(orlicz_norm(power_young(2.0), ones_at({0, 5})), 2.0, 1e-9);
}

TEST(Orlicz, SandwichOnRandomFunctions) {
  std::mt19937_64 rng(24);
  for (const auto& name : kPhis) {
    const auto phi = young_from_spec(name);
    for (int d : {1, 2}) {
      for (int i = 0; i < 200; ++i) {
        const auto f = random_function(rng, d, 10, 12);
        const double lux = luxemburg_norm(phi, f), orl = orlicz_norm(phi, f);
        EXPECT_GE(orl - lux, -1e-6 * lux) << name;
        EXPECT_GE(2 * lux - orl, -1e-6 * lux) << name;
      }
    }
  }
}

TEST(Orlicz, AgreesWithSupDefinitionOnSmallSupports) {
  std::mt19937_64 rng(25);
  for (const char* name : {"power:2", "power:3", "xlog", "exp", "entropy"}) {
    const auto pair = pair_of(young_from_spec(name));
    for (int i = 0; i < 6; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
      DiscreteFunction f(1);
      std::vector<double> a;
      std::uniform_real_distribution<double> u(0.1, 2.0);
      for (std::size_t k = 0; k < n; ++k) {
        a.push_back(u(rng));
        f.set(Point{static_cast<std::int64_t>(k)}, a.back());
      }
      const double oracle = sup_definition_norm(pair.psi, a, 600);
      const double got = orlicz_norm(pair.phi, f);
      EXPECT_GE(got, oracle * (1 - 1e-9)) << name;
      EXPECT_NEAR(got, oracle, 2e-4 * got) << name << " support " << n;
    }
  }
}

TEST(Orlicz, HolderInequality) {
  std::mt19937_64 rng(26);
  for (const char* name : {"power:2", "power:3", "xlog", "exp", "entropy", "cosh"}) {
    const auto pair = pair_of(young_from_spec(name));
    for (int i = 0; i < 200; ++i) {
      const auto f = random_function(rng, 1, 6, 8);
      const auto g = random_function(rng, 1, 6, 8);
      double s = 0;
      for (const auto& [p, v] : f.entries()) s += std::abs(v * g(p));
      EXPECT_LE(s, luxemburg_norm(pair.phi, f) * orlicz_norm(pair.psi, g) * (1 + 1e-9) + 1e-15) << name;
    }
  }
}

TEST(Weighted, Examples) {
  const auto f = ones_at({3});
  const auto phi = power_young(2.0);
  // |f w| = 4 at one point: N = 4 / sqrt(2) by the power closed form.
  EXPECT_NEAR(weighted_norm(phi, f, polynomial_weight(1.0), NormKind::Luxemburg), 4 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(weighted_norm(phi, f, trivial_weight(), NormKind::Luxemburg), luxemburg_norm(phi, f), 1e-15);
  std::mt19937_64 rng(27);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_function(rng, 2, 20, 10, false);
    EXPECT_GE(weighted_norm(phi, g, polynomial_weight(2.0), NormKind::Luxemburg),
              weighted_norm(phi, g, polynomial_weight(1.0), NormKind::Luxemburg));
  }
}

TEST(Radial, Examples) {
  const auto r1 = radial_series(1, [](std::int64_t) { return 1.0; });
  EXPECT_EQ(r1.term(0), 1.0);
  EXPECT_EQ(r1.term(7), 2.0);
  const auto r2 = radial_series(2, [](std::int64_t n) { return static_cast<double>(n); });
  EXPECT_EQ(r2.term(1), 8.0);
  for (int d = 1; d <= 3; ++d) {
    const auto r = radial_series(d, [](std::int64_t) { return 1.0; });
    double s = 0;
    for (std::int64_t n = 0; n <= 20; ++n) s += r.term(n);
    EXPECT_EQ(s, std::pow(41.0, d));
  }
}

TEST(Summability, Examples) {
  RadialTerm sq{[](std::int64_t n) { return 2.0 * std::pow(1.0 + n, -2.0); }, {}, "2/(1+n)^2"};
  const auto a = summability(sq);
  EXPECT_EQ(a.verdict, Verdict::Converges);
  EXPECT_EQ(a.certificate, "power-law");
  EXPECT_NEAR(a.partial_sum, M_PI * M_PI / 3, *a.tail_bound + 1e-9);

  RadialTerm harm{[](std::int64_t n) { return 2.0 / (1.0 + n); }, {}, "2/(1+n)"};
  const auto b = summability(harm);
  EXPECT_EQ(b.verdict, Verdict::Diverges);
  EXPECT_EQ(b.witness, "harmonic");
  EXPECT_FALSE(b.tail_bound.has_value());

  RadialTerm geo{[](std::int64_t n) { return 2.0 * std::exp(-static_cast<double>(n)); }, {}, "2e^-n"};
  const auto c = summability(geo);
  EXPECT_EQ(c.verdict, Verdict::Converges);
  EXPECT_NEAR(c.partial_sum, 2.0 / (1 - std::exp(-1.0)), *c.tail_bound + 1e-12);

  RadialTerm one{[](std::int64_t) { return 1.0; }, {}, "1"};
  EXPECT_EQ(summability(one).witness, "non-vanishing");
}

TEST(Summability, TailBoundIsSound) {
  const std::vector<std::function<double(std::int64_t)>> series{
      [](std::int64_t n) { return std::pow(1.0 + n, -1.5); },
      [](std::int64_t n) { return std::pow(1.0 + n, -2.0) * 2.0; },
      [](std::int64_t n) { return (2.0 * n + 1) * std::pow(1.0 + n, -3.2); },
      [](std::int64_t n) { return std::exp(-0.001 * n); },
      [](std::int64_t n) { return std::exp(-std::sqrt(static_cast<double>(n))); }};
  SeriesPolicy policy;
  policy.n_max = 20000;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto sv = summability(RadialTerm{series[i], {}, ""}, policy);
    ASSERT_EQ(sv.verdict, Verdict::Converges) << i << " " << sv.reason;
    ASSERT_TRUE(sv.tail_bound.has_value());
    double rest = 0;
    for (std::int64_t n = sv.terms_inspected; n <= 10 * policy.n_max; ++n) rest += series[i](n);
    EXPECT_LE(rest, *sv.tail_bound) << i;
  }
}

TEST(Summability, NegativeTermIsInconclusive) {
  RadialTerm neg{[](std::int64_t n) { return n == 5 ? -1.0 : 0.5; }, {}, ""};
  EXPECT_EQ(summability(neg).verdict, Verdict::Inconclusive);
}

TEST(Membership, Examples) {
  const auto sq = s_psi_membership(power_young(2.0), 1, [](std::int64_t n) { return 1.0 / (1.0 + n); });
  EXPECT_EQ(sq.verdict, Verdict::Converges);
  EXPECT_EQ(sq.runs.size(), 4u);
  const auto ex = s_psi_membership(exp_young(), 1, [](std::int64_t) { return 1.0; });
  EXPECT_EQ(ex.verdict, Verdict::Diverges);
  const auto z = s_psi_membership(power_young(2.0), 2, [](std::int64_t) { return 0.0; });
  EXPECT_EQ(z.verdict, Verdict::Converges);
  for (const auto& [_, sv] : z.runs) EXPECT_EQ(sv.partial_sum, 0.0);
}
