#include <gtest/gtest.h>

#include <cmath>

#include "tworlicz/appendix_a.hpp"

using namespace tworlicz;
using namespace tworlicz::appendix;

namespace {

// Junction abscissa of the tangents at n < m, in long double, written independently.
long double junction_ld(long double n, long double m) {
  const long double e = std::exp(1.0L);
  // ln n + 2t/(e sqrt n) = ln m + 2t/(e sqrt m)
  return std::log(m / n) / (2.0L / (e * std::sqrt(n)) - 2.0L / (e * std::sqrt(m)));
}

const BuildResult& k3() {
  static const BuildResult r = build_rho(10, 3);
  return r;
}

}  // namespace

TEST(Build, FirstPiece) {
  const auto r = build_rho(10, 1);
  ASSERT_EQ(r.rho.anchors, std::vector<std::uint64_t>{10});
  ASSERT_EQ(r.rho.segments.size(), 2u);
  EXPECT_NEAR(static_cast<double>(r.rho.touch_points[0]), std::exp(1.0) * std::sqrt(10.0), 1e-14);
  EXPECT_NEAR(r.rho.value(10.0), std::log(10.0) + 2 * std::sqrt(10.0) / std::exp(1.0), 1e-14);
  EXPECT_EQ(r.rho.value(0.0), 0.0);
  // Chord slope rho(n1)/n1 exceeds the tangent slope 2/(e sqrt n1).
  EXPECT_GT(r.rho.chord_slope, tangent_slope(10));
  EXPECT_NO_THROW(verify_counterexample(r.rho, 20));
}

TEST(Build, ParamErrors) {
  EXPECT_THROW(build_rho(2, 3), ParamError);
  EXPECT_THROW(build_rho(10, 0), ParamError);
}

TEST(Build, JunctionClosedFormMatchesIntersection) {
  for (auto [n, m] : {std::pair<std::uint64_t, std::uint64_t>{10, 566}, {10, 100}, {566, 100000}}) {
    const Real t = junction(n, m);
    EXPECT_LT(static_cast<double>(boost::multiprecision::abs(tangent_value(n, t) - tangent_value(m, t))), 1e-30);
    EXPECT_NEAR(static_cast<double>(t), static_cast<double>(junction_ld(n, m)), 1e-9 * static_cast<double>(t));
  }
}

TEST(Build, SecondAnchorIsSmallestAdmissible) {
  const auto r = build_rho(10, 2);
  ASSERT_EQ(r.rho.anchors, (std::vector<std::uint64_t>{10, 566}));
  // Exhaustive oracle over every candidate in (2 n1, n2].
  for (std::uint64_t m = 21; m < 566; ++m) {
    const long double t = junction_ld(10, m);
    EXPECT_FALSE(t > 20 && t < m) << m;
    EXPECT_FALSE(admissible(10, m)) << m;
  }
  const long double t = junction_ld(10, 566);
  EXPECT_TRUE(t > 20 && t < 566);
  EXPECT_FALSE(r.log.candidates.empty());
  EXPECT_EQ(r.log.candidates.back().candidate == 566 || r.log.candidates.back().admissible, true);
}

TEST(Build, ThirdAnchor) {
  const auto& r = k3();
  ASSERT_EQ(r.rho.anchors.size(), 3u);
  EXPECT_EQ(r.rho.anchors[2], 905361851692728057ULL);
  EXPECT_TRUE(admissible(566, r.rho.anchors[2]));
  EXPECT_FALSE(admissible(566, r.rho.anchors[2] - 1));
}

TEST(Build, FiveSegmentsExhaustSearch) {
  try {
    build_rho(10, 5);
    FAIL() << "expected SearchExhausted";
  } catch (const SearchExhausted& e) {
    EXPECT_NE(std::string(e.what()).find("n_4"), std::string::npos) << e.what();
  }
}

TEST(Structure, AnchorsGrowAndPiecesTile) {
  const auto& rho = k3().rho;
  for (std::size_t k = 0; k + 1 < rho.anchors.size(); ++k) EXPECT_GT(rho.anchors[k + 1], 2 * rho.anchors[k]);
  EXPECT_EQ(rho.segments.front().a, 0);
  for (std::size_t i = 0; i + 1 < rho.segments.size(); ++i) {
    EXPECT_EQ(rho.segments[i].b, rho.segments[i + 1].a);
    EXPECT_GT(rho.segments[i].slope, rho.segments[i + 1].slope);
    const Real j = rho.segments[i].b;
    EXPECT_LT(static_cast<double>(boost::multiprecision::abs(rho.segments[i].value(j) - rho.segments[i + 1].value(j))), 1e-30);
  }
  EXPECT_GT(rho.segments.back().slope, 0);
  // On [n_k, 2 n_k] the piece is ln n_k + 2x/(e sqrt n_k).
  for (std::size_t k = 0; k < rho.anchors.size(); ++k) {
    const Real n(rho.anchors[k]);
    for (const Real& x : {n, Real(1.5) * n, Real(2) * n})
      EXPECT_LT(static_cast<double>(boost::multiprecision::abs(rho(x) - tangent_value(rho.anchors[k], x))), 1e-40 * static_cast<double>(x) + 1e-40);
  }
}

TEST(Structure, AnchorIdentities) {
  const auto& rho = k3().rho;
  for (auto n : rho.anchors) {
    const Real lhs = 2 * rho(n) - rho(2 * n);
    EXPECT_LT(static_cast<double>(boost::multiprecision::abs(lhs - boost::multiprecision::log(Real(n)))), 1e-30);
    const Real prod = Real(n) * boost::multiprecision::exp(rho(2 * n) - 2 * rho(n));
    EXPECT_LT(static_cast<double>(boost::multiprecision::abs(prod - 1)), 1e-30);
  }
  EXPECT_NEAR(static_cast<double>(boost::multiprecision::exp(rho(std::uint64_t{20}) - 2 * rho(std::uint64_t{10}))), 0.1, 1e-15);
}

TEST(Structure, TangentPiecesStayAboveTwoLog) {
  const auto& rho = k3().rho;
  for (std::size_t i = 1; i < rho.segments.size(); ++i) {
    const auto& s = rho.segments[i];
    for (int k = 0; k <= 100; ++k) {
      const Real x = s.a + (s.b - s.a) * k / 100;
      EXPECT_GE(s.value(x) - 2 * boost::multiprecision::log(x), -1e-30) << s.label << " k=" << k;
    }
  }
}

TEST(Verify, ThreeAnchorsPassAllParts) {
  const auto& rho = k3().rho;
  const auto rep = verify_counterexample(rho, 2 * rho.anchors.back());
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(rep.parts[i].passed) << i << ": " << rep.parts[i].detail;
  EXPECT_LE(rep.max_second_difference, 1e-12);
  EXPECT_GE(rep.min_rho_minus_2log, 0.0);
  EXPECT_GE(rep.min_a_increment, -1e-12);
  EXPECT_LT(rep.max_anchor_identity_error, 1e-9);
  EXPECT_LT(rep.max_anchor_product_error, 1e-9);
  ASSERT_EQ(rep.tangent_slopes.size(), 3u);
  EXPECT_GT(rep.tangent_slopes[0], rep.tangent_slopes[1]);
  EXPECT_GT(rep.tangent_slopes[1], rep.tangent_slopes[2]);
  EXPECT_FALSE(rep.limit_note.empty());
}

TEST(Verify, CertificatesAgreeWithEnumerationTwoAnchors) {
  const auto rho = build_rho(10, 2).rho;
  const std::uint64_t N = 2 * rho.anchors.back();
  const auto rep = verify_counterexample(rho, N);
  const auto en = verify_by_enumeration(rho, N);
  EXPECT_NEAR(rep.max_second_difference, en.max_second_difference, 1e-15);
  EXPECT_NEAR(rep.min_rho_minus_2log, en.min_rho_minus_2log, 1e-15);
  EXPECT_NEAR(rep.min_a_increment, en.min_a_increment, 1e-15);
}

TEST(Verify, CertificatesBoundEnumerationThreeAnchors) {
  const auto& rho = k3().rho;
  const auto rep = verify_counterexample(rho, 2 * rho.anchors.back());
  const auto en = verify_by_enumeration(rho, 200000);
  EXPECT_GE(rep.max_second_difference, en.max_second_difference - 1e-15);
  EXPECT_LE(rep.min_rho_minus_2log, en.min_rho_minus_2log + 1e-15);
  EXPECT_LE(rep.min_a_increment, en.min_a_increment + 1e-15);
  EXPECT_LE(en.max_second_difference, 1e-12);
  EXPECT_GE(en.min_rho_minus_2log, 0.0);
}

TEST(Verify, TamperedSlopeIsCaught) {
  const auto& rho = k3().rho;
  for (std::size_t piece = 1; piece < rho.segments.size(); ++piece) {
    const auto bad = tamper_slope(rho, piece, 1e-3);
    try {
      verify_counterexample(bad, 2 * bad.anchors.back());
      FAIL() << "tampered piece " << piece << " passed";
    } catch (const VerificationError& e) {
      EXPECT_NE(std::string(e.what()).find("(ii) concavity"), std::string::npos) << e.what();
    }
  }
}

TEST(Verify, HorizonBelowLastAnchorRejected) {
  const auto& rho = k3().rho;
  EXPECT_THROW(verify_counterexample(rho, rho.anchors.back()), Error);
}
