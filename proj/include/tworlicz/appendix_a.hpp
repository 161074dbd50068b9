#pragma once

/// \file appendix_a.hpp
/// \brief Piecewise-linear concave rho built from tangent lines of 2 ln x,
/// for which omega^{-1} is square summable on Z but
/// sum_n exp(rho(2n) - 2 rho(n)) diverges.
///
/// On [n_k, 2 n_k] rho is the tangent to 2 ln x through (0, ln n_k), which
/// touches at x_k = e sqrt(n_k) and gives 2 rho(n_k) - rho(2 n_k) = ln n_k.
/// Consecutive tangents are joined at their intersection t_k, and [0, n_1]
/// is covered by the chord from the origin.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tworlicz/errors.hpp"

namespace tworlicz::appendix {

/// 50 decimal digits: resolving the smallest third anchor (~9e17) needs
/// about 1e-21 relative accuracy in t_k.
using Real = boost::multiprecision::cpp_bin_float_50;

inline Real e_const() { return boost::math::constants::e<Real>(); }

/// Slope 2 / (e sqrt(n)) of the tangent attached to anchor n.
inline Real tangent_slope(std::uint64_t n) {
  return Real(2) / (e_const() * boost::multiprecision::sqrt(Real(n)));
}

/// Tangent line ln n + 2x / (e sqrt(n)).
inline Real tangent_value(std::uint64_t n, const Real& x) {
  return boost::multiprecision::log(Real(n)) + tangent_slope(n) * x;
}

/// Abscissa where the tangents of anchors n < m intersect:
/// e ln(m/n) (n sqrt(m) + m sqrt(n)) / (2 (m - n)).
inline Real junction(std::uint64_t n, std::uint64_t m) {
  using boost::multiprecision::log;
  using boost::multiprecision::sqrt;
  const Real rn(n), rm(m);
  return e_const() * log(rm / rn) * (rn * sqrt(rm) + rm * sqrt(rn)) / (2 * (rm - rn));
}

/// 2 n < t < m.
inline bool admissible(std::uint64_t n, std::uint64_t m) {
  if (m <= 2 * n) return false;
  const Real t = junction(n, m);
  return t > Real(2) * Real(n) && t < Real(m);
}

struct Segment {
  Real a, b;  // closed interval [a, b]
  Real slope, intercept;
  std::string label;

  Real value(const Real& x) const { return intercept + slope * x; }
  bool operator==(const Segment&) const = default;
};

struct PiecewiseRho {
  std::uint64_t n1 = 0;
  std::vector<Segment> segments;         // chord, then one piece per anchor
  std::vector<std::uint64_t> anchors;    // n_k
  std::vector<Real> touch_points;        // x_k = e sqrt(n_k)
  std::vector<Real> junctions;           // t_k, between anchors k and k+1
  Real chord_slope;

  /// Segment whose half-open range [a, b) holds x; the last segment is
  /// extended beyond its end.
  std::size_t segment_index(const Real& x) const {
    if (segments.empty()) throw VerificationError("empty piecewise function");
    if (x < 0) throw ParamError("rho evaluated at a negative abscissa");
    for (std::size_t i = 0; i + 1 < segments.size(); ++i)
      if (x < segments[i].b) return i;
    return segments.size() - 1;
  }
  Real operator()(const Real& x) const { return segments[segment_index(x)].value(x); }
  Real operator()(std::uint64_t n) const { return (*this)(Real(n)); }
  double value(double x) const { return static_cast<double>((*this)(Real(x))); }

  bool operator==(const PiecewiseRho&) const = default;
};

struct SearchPolicy {
  std::uint64_t cap = std::uint64_t{1} << 63;  // anchors stay exact 64-bit integers
};

struct CandidateRecord {
  int k = 0;                 // searching n_{k+1}
  std::uint64_t candidate = 0;
  double junction = 0.0;     // t_k for this candidate
  bool admissible = false;
  std::string phase;         // "double" or "bisect"
};

struct ConstructionLog {
  std::vector<CandidateRecord> candidates;
  std::vector<std::string> notes;
};

struct BuildResult {
  PiecewiseRho rho;
  ConstructionLog log;
};

/// Smallest admissible anchor after n: doubling from 2n+1, then bisection
/// between the last rejected and the first accepted candidate.
inline std::uint64_t next_anchor(std::uint64_t n, int k, const SearchPolicy& policy,
                                 ConstructionLog& log) {
  auto test = [&](std::uint64_t m, const char* phase) {
    const bool ok = admissible(n, m);
    log.candidates.push_back({k, m, static_cast<double>(junction(n, m)), ok, phase});
    return ok;
  };
  if (n > policy.cap / 2)
    throw SearchExhausted("n_" + std::to_string(k) + " = " + std::to_string(n) +
                          " leaves no room below cap " + std::to_string(policy.cap));
  std::uint64_t lo = 2 * n;
  std::uint64_t hi = 2 * n + 1;
  while (!test(hi, "double")) {
    lo = hi;
    if (hi > policy.cap / 2) {
      // For m >> n, t ~ e sqrt(n) ln(m/n) / 2, so t > 2n needs ln(m/n) > 4 sqrt(n)/e.
      const double need = 4.0 * std::sqrt(static_cast<double>(n)) / std::exp(1.0);
      std::ostringstream os;
      os << "no admissible n_" << k + 1 << " below cap " << policy.cap << " after n_" << k
         << " = " << n << " (last candidate " << hi << ", t = " << log.candidates.back().junction
         << "); admissibility needs ln(n_" << k + 1 << "/n_" << k << ") > about " << need;
      throw SearchExhausted(os.str());
    }
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (test(mid, "bisect"))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

/// Builds rho with K tangent pieces starting at anchor n1 > 2.
inline BuildResult build_rho(std::uint64_t n1, int K, const SearchPolicy& policy = {}) {
  if (n1 <= 2) throw ParamError("n1 must be > 2");
  if (K < 1) throw ParamError("number of segments must be >= 1");
  BuildResult res;
  auto& rho = res.rho;
  auto& log = res.log;
  rho.n1 = n1;
  rho.anchors.push_back(n1);
  log.notes.push_back("rho on [0, n1] is the chord from the origin to (n1, rho(n1))");
  log.notes.push_back("n_{k+1} is the smallest integer > 2 n_k with 2 n_k < t_k < n_{k+1}");
  for (int k = 1; k < K; ++k) rho.anchors.push_back(next_anchor(rho.anchors.back(), k, policy, log));

  for (auto n : rho.anchors) rho.touch_points.push_back(e_const() * boost::multiprecision::sqrt(Real(n)));
  for (std::size_t k = 0; k + 1 < rho.anchors.size(); ++k)
    rho.junctions.push_back(junction(rho.anchors[k], rho.anchors[k + 1]));

  const Real rn1(n1);
  rho.chord_slope = tangent_value(n1, rn1) / rn1;
  rho.segments.push_back({Real(0), rn1, rho.chord_slope, Real(0), "chord"});
  for (std::size_t k = 0; k < rho.anchors.size(); ++k) {
    const auto n = rho.anchors[k];
    const Real a = k == 0 ? rn1 : rho.junctions[k - 1];
    const Real b = k + 1 < rho.anchors.size() ? rho.junctions[k] : Real(2) * Real(n);
    rho.segments.push_back({a, b, tangent_slope(n), boost::multiprecision::log(Real(n)),
                            "tangent " + std::to_string(k + 1)});
  }
  log.notes.push_back("rho beyond 2 n_K continues along the last tangent");
  return res;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct PartResult {
  bool passed = false;
  std::string detail;
};

struct CounterexampleReport {
  std::uint64_t horizon = 0;
  PartResult parts[5];
  std::vector<double> tangent_slopes;
  std::vector<double> rho_over_n_at_anchors;
  double rho_over_n_at_horizon = 0.0;
  double max_second_difference = 0.0;
  double min_rho_minus_2log = 0.0;
  double inverse_weight_sum_bound = 0.0;
  double min_a_increment = 0.0;  // min of b(n+1) - b(n), b = 2 rho(n) - rho(2n)
  double max_anchor_identity_error = 0.0;
  double max_anchor_product_error = 0.0;
  std::string limit_note;
};

namespace detail {

using U64 = std::uint64_t;

inline U64 floor_u64(const Real& x) {
  if (x <= 0) return 0;
  return static_cast<U64>(boost::multiprecision::floor(x));
}

inline std::string str(const Real& x, int digits = 20) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace detail

/// Checks properties (i)-(v) of the construction on integers n <= N.
/// Throws VerificationError naming the failing part and index.
///
/// Integer-range claims are certified from the piecewise-affine structure
/// instead of enumerating up to N: second differences can only be nonzero
/// next to a breakpoint, rho(x) - 2 ln x is convex on each piece so its
/// integer minimum sits at floor/ceil of 2/slope, and the increments of
/// 2 rho(n) - rho(2n) are constant between integers adjacent to a breakpoint
/// j or j/2.
inline CounterexampleReport verify_counterexample(const PiecewiseRho& rho, std::uint64_t N) {
  using detail::U64;
  using boost::multiprecision::abs;
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  if (rho.anchors.empty() || rho.segments.size() != rho.anchors.size() + 1)
    throw VerificationError("structure: expected one chord plus one piece per anchor");
  const U64 last = rho.anchors.back();
  if (N < 2 * last) throw ParamError("horizon must be at least 2 * last anchor = " + std::to_string(2 * last));
  CounterexampleReport rep;
  rep.horizon = N;
  const auto& seg = rho.segments;
  const Real tiny("1e-40");

  // Structure: tiling of [0, 2 n_K] and anchor growth.
  if (seg.front().a != 0) throw VerificationError("structure: first piece does not start at 0");
  for (std::size_t i = 0; i + 1 < seg.size(); ++i)
    if (seg[i].b != seg[i + 1].a || !(seg[i].a < seg[i].b))
      throw VerificationError("structure: pieces " + std::to_string(i) + " and " +
                              std::to_string(i + 1) + " do not tile");
  if (seg.back().b != Real(2) * Real(last))
    throw VerificationError("structure: last piece does not end at 2 n_K");
  for (std::size_t k = 0; k + 1 < rho.anchors.size(); ++k)
    if (!(rho.anchors[k + 1] > 2 * rho.anchors[k]))
      throw VerificationError("structure: n_" + std::to_string(k + 2) + " <= 2 n_" + std::to_string(k + 1));

  // (i) rho(0) = 0 and increasing.
  if (abs(rho(Real(0))) > Real("1e-12")) throw VerificationError("(i) rho(0) != 0");
  for (std::size_t i = 0; i < seg.size(); ++i)
    if (!(seg[i].slope > 0))
      throw VerificationError("(i) slope of piece " + std::to_string(i) + " is not positive");
  rep.parts[0] = {true, "rho(0) = 0, all " + std::to_string(seg.size()) + " slopes positive"};

  // (ii) concavity.
  for (std::size_t i = 0; i + 1 < seg.size(); ++i)
    if (!(seg[i + 1].slope < seg[i].slope))
      throw VerificationError("(ii) concavity: slopes do not decrease at junction " + std::to_string(i) +
                              " (pieces " + std::to_string(i) + " -> " + std::to_string(i + 1) + ")");
  double max_d2 = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < seg.size(); ++i) {
    const U64 f = detail::floor_u64(seg[i].a);
    for (U64 n = f > 1 ? f - 1 : 1; n <= f + 2; ++n) {
      if (n < 1 || n + 1 > N) continue;
      const Real d2 = rho(n + 1) - 2 * rho(n) + rho(n - 1);
      max_d2 = std::max(max_d2, static_cast<double>(d2));
      if (d2 > Real("1e-12"))
        throw VerificationError("(ii) concavity: second difference " + detail::str(d2, 6) + " at n=" +
                                std::to_string(n) + " next to junction " + std::to_string(i - 1) +
                                " (pieces " + std::to_string(i - 1) + " -> " + std::to_string(i) + ")");
    }
  }
  for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
    const Real gap = abs(seg[i].value(seg[i].b) - seg[i + 1].value(seg[i].b));
    if (gap > Real("1e-12"))
      throw VerificationError("(ii) concavity: discontinuity " + detail::str(gap, 6) +
                              " at junction " + std::to_string(i) + " (pieces " + std::to_string(i) +
                              " -> " + std::to_string(i + 1) + ")");
  }
  rep.max_second_difference = std::max(0.0, max_d2);
  rep.parts[1] = {true, "slopes strictly decreasing; second differences <= 1e-12 on all integers <= " +
                            std::to_string(N) + " (nonzero only next to " +
                            std::to_string(seg.size() - 1) + " junctions)"};

  // (iii) slopes 2/(e sqrt(n_k)) decrease towards 0.
  for (std::size_t k = 0; k < rho.anchors.size(); ++k) {
    const Real expect = tangent_slope(rho.anchors[k]);
    if (abs(seg[k + 1].slope - expect) > Real("1e-40") * expect)
      throw VerificationError("(iii) piece " + std::to_string(k + 1) + " slope differs from 2/(e sqrt(n_" +
                              std::to_string(k + 1) + "))");
    rep.tangent_slopes.push_back(static_cast<double>(expect));
    rep.rho_over_n_at_anchors.push_back(static_cast<double>(rho(rho.anchors[k]) / Real(rho.anchors[k])));
  }
  rep.rho_over_n_at_horizon = static_cast<double>(rho(N) / Real(N));
  rep.limit_note = "rho(x)/x -> 0 is an asymptotic statement; only the decreasing slope sequence and "
                   "rho(N)/N at the horizon are reported";
  rep.parts[2] = {true, "tangent slopes decreasing, last " + detail::str(seg.back().slope, 6) +
                            ", rho(N)/N = " + detail::str(rho(N) / Real(N), 6)};

  // (iv) rho(n) >= 2 ln n on [n1, N].
  Real min_gap = std::numeric_limits<double>::infinity();
  U64 argmin = 0;
  for (std::size_t i = 0; i < seg.size(); ++i) {
    const Real lo_r = std::max(seg[i].a, Real(rho.n1));
    const Real hi_r = i + 1 == seg.size() ? Real(N) : std::min(seg[i].b, Real(N));
    if (hi_r < lo_r) continue;
    U64 lo = detail::floor_u64(lo_r);
    if (Real(lo) < lo_r) ++lo;
    const U64 hi = detail::floor_u64(hi_r);
    if (hi < lo) continue;
    const U64 star = detail::floor_u64(Real(2) / seg[i].slope);
    for (U64 n : {lo, hi, std::clamp(star, lo, hi), std::clamp(star + 1, lo, hi)}) {
      const Real g = seg[i].value(Real(n)) - 2 * log(Real(n));
      if (g < min_gap) {
        min_gap = g;
        argmin = n;
      }
    }
    if (i > 0) {
      // Tangent property at 100 points of the piece.
      const Real b = i + 1 == seg.size() ? Real(2) * Real(last) : seg[i].b;
      for (int j = 0; j < 100; ++j) {
        const Real x = seg[i].a + (b - seg[i].a) * j / 99;
        if (seg[i].value(x) - 2 * log(x) < -tiny)
          throw VerificationError("(iv) piece " + std::to_string(i) + " dips below 2 ln x at x=" +
                                  detail::str(x));
      }
    }
  }
  if (min_gap < -tiny)
    throw VerificationError("(iv) rho(n) < 2 ln n at n=" + std::to_string(argmin));
  rep.min_rho_minus_2log = static_cast<double>(min_gap);
  Real head = 0;
  for (U64 n = 0; n < rho.n1; ++n) head += exp(-rho(n));
  rep.inverse_weight_sum_bound = static_cast<double>(head + Real(1) / Real(rho.n1 - 1));
  rep.parts[3] = {true, "rho(n) - 2 ln n >= " + detail::str(min_gap, 6) + " (min at n=" +
                            std::to_string(argmin) + "); sum exp(-rho(n)) <= " +
                            detail::str(Real(rep.inverse_weight_sum_bound), 10)};

  // (v) a_n = exp(rho(2n) - 2 rho(n)) nonincreasing on [1, N/2], a_{n_k} = 1/n_k.
  const U64 M = N / 2 - 1;  // increments b(n+1) - b(n) for n in [1, M]
  std::set<U64> critical{1, M};
  for (std::size_t i = 1; i < seg.size(); ++i) {
    for (const Real& x : {seg[i].a, seg[i].a / 2}) {
      const U64 f = detail::floor_u64(x);
      for (U64 n = f > 1 ? f - 1 : 1; n <= f + 1; ++n)
        if (n >= 1 && n <= M) critical.insert(n);
    }
  }
  std::vector<U64> probe(critical.begin(), critical.end());
  for (U64 c : critical)
    if (c + 1 <= M && !critical.count(c + 1)) probe.push_back(c + 1);
  auto bfun = [&rho](U64 n) { return 2 * rho(n) - rho(2 * n); };
  Real min_inc = std::numeric_limits<double>::infinity();
  for (U64 n : probe) {
    const Real inc = bfun(n + 1) - bfun(n);
    if (inc < min_inc) min_inc = inc;
    if (inc < Real("-1e-12") * (1 + abs(bfun(n))))
      throw VerificationError("(v) a_n increases at n=" + std::to_string(n));
  }
  rep.min_a_increment = static_cast<double>(min_inc);
  for (std::size_t k = 0; k < rho.anchors.size(); ++k) {
    const U64 n = rho.anchors[k];
    const Real id = abs(2 * rho(n) - rho(2 * n) - log(Real(n)));
    const Real prod = abs(Real(n) * exp(rho(2 * n) - 2 * rho(n)) - 1);
    rep.max_anchor_identity_error = std::max(rep.max_anchor_identity_error, static_cast<double>(id));
    rep.max_anchor_product_error = std::max(rep.max_anchor_product_error, static_cast<double>(prod));
    if (id > Real("1e-9"))
      throw VerificationError("(v) 2 rho(n_k) - rho(2 n_k) != ln n_k at k=" + std::to_string(k + 1));
    if (prod > Real("1e-9"))
      throw VerificationError("(v) n_k a_{n_k} != 1 at k=" + std::to_string(k + 1));
  }
  rep.parts[4] = {true, "a_n nonincreasing on [1, " + std::to_string(N / 2) + "] (" +
                            std::to_string(probe.size()) + " increment classes); n_k a_{n_k} = 1 at all " +
                            std::to_string(rho.anchors.size()) + " anchors"};
  return rep;
}

struct EnumerationCheck {
  double max_second_difference = -std::numeric_limits<double>::infinity();
  double min_rho_minus_2log = std::numeric_limits<double>::infinity();
  double min_a_increment = std::numeric_limits<double>::infinity();
  std::uint64_t limit = 0;
};

/// Literal enumeration of the integer claims up to `limit`; an independent
/// cross-check of the structural certificates in verify_counterexample.
inline EnumerationCheck verify_by_enumeration(const PiecewiseRho& rho, std::uint64_t limit) {
  using boost::multiprecision::log;
  EnumerationCheck c;
  c.limit = limit;
  for (std::uint64_t n = 1; n + 1 <= limit; ++n) {
    const Real d2 = rho(n + 1) - 2 * rho(n) + rho(n - 1);
    c.max_second_difference = std::max(c.max_second_difference, static_cast<double>(d2));
    if (n >= rho.n1)
      c.min_rho_minus_2log = std::min(c.min_rho_minus_2log, static_cast<double>(rho(n) - 2 * log(Real(n))));
    if (2 * n + 2 <= limit) {
      const Real inc = (2 * rho(n + 1) - rho(2 * n + 2)) - (2 * rho(n) - rho(2 * n));
      c.min_a_increment = std::min(c.min_a_increment, static_cast<double>(inc));
    }
  }
  return c;
}

/// Copy of rho with the slope of one piece shifted by delta (intercept kept).
inline PiecewiseRho tamper_slope(PiecewiseRho rho, std::size_t piece, double delta) {
  if (piece >= rho.segments.size()) throw ParamError("no such piece");
  rho.segments[piece].slope += Real(delta);
  return rho;
}

}  // namespace tworlicz::appendix
