#pragma once

/// \file criteria.hpp
/// \brief Mechanical checks of the sufficient conditions for twisted Orlicz
/// algebras on Z^d with weights e^{rho(tau(s))}.
///
/// Every check returns a CriterionReport. Holds and Fails are only issued
/// when all sub-checks are decisive; anything else is Inconclusive. A report
/// states whether hypotheses were verified, never the conclusions drawn from
/// them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tworlicz/errors.hpp"
#include "tworlicz/lattice.hpp"
#include "tworlicz/numerics.hpp"
#include "tworlicz/orlicz.hpp"
#include "tworlicz/twist.hpp"
#include "tworlicz/young.hpp"

namespace tworlicz {

using Json = nlohmann::ordered_json;

enum class CriterionVerdict { Holds, Fails, Inconclusive };

inline const char* to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::Holds: return "Holds";
    case CriterionVerdict::Fails: return "Fails";
    case CriterionVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// 0 = Holds, 1 = Fails, 2 = Inconclusive.
inline int exit_code(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::Holds: return 0;
    case CriterionVerdict::Fails: return 1;
    case CriterionVerdict::Inconclusive: return 2;
  }
  return 2;
}

struct CriterionReport {
  std::string id;
  CriterionVerdict verdict = CriterionVerdict::Inconclusive;
  std::string summary;
  Json evidence = Json::object();
  Json derived = Json::object();
};

/// Combines decisive sub-verdicts: any Fails wins, then any Inconclusive.
inline CriterionVerdict combine(std::initializer_list<CriterionVerdict> parts) {
  bool inconclusive = false;
  for (auto v : parts) {
    if (v == CriterionVerdict::Fails) return CriterionVerdict::Fails;
    if (v == CriterionVerdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? CriterionVerdict::Inconclusive : CriterionVerdict::Holds;
}

inline CriterionVerdict from_series(Verdict v) {
  switch (v) {
    case Verdict::Converges: return CriterionVerdict::Holds;
    case Verdict::Diverges: return CriterionVerdict::Fails;
    case Verdict::Inconclusive: return CriterionVerdict::Inconclusive;
  }
  return CriterionVerdict::Inconclusive;
}

namespace detail {

/// JSON number, with non-finite values spelled out as strings.
inline Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline Json to_json(const SeriesVerdict& sv) {
  Json j;
  j["verdict"] = to_string(sv.verdict);
  j["partial_sum"] = num(sv.partial_sum);
  j["terms_inspected"] = sv.terms_inspected;
  if (sv.tail_bound) j["tail_bound"] = num(*sv.tail_bound);
  if (!sv.certificate.empty()) j["certificate"] = sv.certificate;
  if (!sv.witness.empty()) j["witness"] = sv.witness;
  if (sv.verdict != Verdict::Inconclusive) j["certified_rate"] = num(sv.certified_rate);
  if (!sv.reason.empty()) j["reason"] = sv.reason;
  return j;
}

inline Json to_json(const MembershipVerdict& mv) {
  Json j;
  j["verdict"] = to_string(mv.verdict);
  j["value_monotone_tail"] = mv.value_monotone_tail;
  Json runs = Json::array();
  for (const auto& [alpha, sv] : mv.runs) {
    Json r = to_json(sv);
    r["alpha"] = alpha;
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  j["note"] = mv.note;
  return j;
}

inline Json to_json(const LimitEstimate& e) {
  Json j;
  j["kind"] = to_string(e.kind);
  j["value"] = num(e.value);
  j["spread"] = num(e.spread);
  j["samples"] = Json::array({num(e.samples[0]), num(e.samples[1]), num(e.samples[2])});
  j["method"] = e.method;
  return j;
}

inline Json weight_json(const Weight& w) {
  Json j;
  j["name"] = w.name();
  j["kind"] = to_string(w.kind());
  Json p = Json::object();
  for (const auto& [k, v] : w.params()) p[k] = v;
  j["params"] = std::move(p);
  return j;
}

inline Json young_json(const YoungFunction& f) {
  Json j;
  j["name"] = f.name();
  Json p = Json::object();
  for (const auto& [k, v] : f.params()) p[k] = v;
  j["params"] = std::move(p);
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lemma: decreasing quotients
// ---------------------------------------------------------------------------

/// Checks that sigma(n+1)/sigma(n) is nonincreasing on [0, 2N] and then
/// brute-forces
///   sigma(m+n)/(sigma(m)sigma(n)) <= sigma(2m)/sigma(m)^2 + sigma(2n)/sigma(n)^2
/// for 0 <= m, n <= N. sigma is passed through its logarithm so that fast
/// growing sequences do not overflow.
inline CriterionReport lemma_decreasing_quotient(const std::function<double(std::int64_t)>& log_sigma,
                                                 std::int64_t N, double tol = 1e-12) {
  if (N < 0) throw ParamError("N must be nonnegative");
  CriterionReport r;
  r.id = "lemma-decreasing-quotient";
  std::vector<double> ls(static_cast<std::size_t>(2 * N + 2));
  for (std::int64_t n = 0; n <= 2 * N + 1; ++n) {
    ls[n] = log_sigma(n);
    if (!std::isfinite(ls[n]))
      throw ParamError("log sigma(" + std::to_string(n) + ") is not finite");
  }
  // Hypothesis: ln sigma(n+1) - ln sigma(n) nonincreasing.
  bool hypothesis = true;
  std::int64_t bad = -1;
  double max_increase = 0.0;
  for (std::int64_t n = 0; n + 2 <= 2 * N + 1; ++n) {
    const double d0 = ls[n + 1] - ls[n], d1 = ls[n + 2] - ls[n + 1];
    const double inc = d1 - d0;
    const double scale = std::max({1.0, std::abs(ls[n]), std::abs(ls[n + 2])});
    if (inc > tol * scale) {
      if (hypothesis) bad = n;
      hypothesis = false;
    }
    max_increase = std::max(max_increase, inc);
  }
  r.evidence["hypothesis_range"] = Json::array({0, 2 * N});
  r.evidence["quotients_nonincreasing"] = hypothesis;
  r.evidence["max_quotient_log_increase"] = max_increase;
  if (!hypothesis) {
    r.evidence["first_increase_at"] = bad;
    r.verdict = CriterionVerdict::Fails;
    r.summary = "hypothesis fails: sigma(n+1)/sigma(n) increases at n=" + std::to_string(bad);
    return r;
  }
  double min_slack = std::numeric_limits<double>::infinity();
  std::int64_t am = 0, an = 0;
  for (std::int64_t m = 0; m <= N; ++m) {
    const double um = std::exp(ls[2 * m] - 2 * ls[m]);
    for (std::int64_t n = 0; n <= N; ++n) {
      const double lhs = std::exp(ls[m + n] - ls[m] - ls[n]);
      const double rhs = um + std::exp(ls[2 * n] - 2 * ls[n]);
      const double slack = (rhs - lhs) / std::max(1.0, rhs);
      if (slack < min_slack) {
        min_slack = slack;
        am = m;
        an = n;
      }
    }
  }
  r.evidence["pairs_checked"] = (N + 1) * (N + 1);
  r.evidence["min_relative_slack"] = min_slack;
  r.evidence["argmin"] = Json::array({am, an});
  if (min_slack >= -tol) {
    r.verdict = CriterionVerdict::Holds;
    r.summary = "inequality verified for all 0 <= m,n <= " + std::to_string(N);
  } else {
    r.verdict = CriterionVerdict::Fails;
    r.summary = "inequality violated at m=" + std::to_string(am) + ", n=" + std::to_string(an);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Decomposition u(s) = exp(rho(2 tau(s)) - 2 rho(tau(s)))
// ---------------------------------------------------------------------------

/// u(n) = exp(rho(2n) - 2 rho(n)).
inline RadialProfile theorem32_profile(const Weight& w) {
  return [w](std::int64_t n) {
    const double x = static_cast<double>(n);
    return std::exp(w.rho(2 * x) - 2 * w.rho(x));
  };
}

/// Throws ConcavityError unless rho(0) = 0 and rho is increasing and
/// concave on the half-integer grid of [0, x_max].
inline void require_concave_rho(const Weight& w, double x_max, double tol = 1e-12) {
  if (std::abs(w.rho(0.0)) > tol)
    throw ConcavityError("rho(0) = " + detail::format_param(w.rho(0.0)) + " for " + w.name());
  const std::int64_t steps = static_cast<std::int64_t>(std::ceil(2 * x_max));
  double prev2 = w.rho(0.0), prev1 = w.rho(0.5);
  if (prev1 < prev2) throw ConcavityError(w.name() + " decreases at x=0");
  for (std::int64_t i = 2; i <= steps; ++i) {
    const double x = 0.5 * static_cast<double>(i);
    const double cur = w.rho(x);
    const double scale = std::max(1.0, std::abs(cur));
    if (cur < prev1 - tol * scale)
      throw ConcavityError(w.name() + " decreases at x=" + detail::format_param(x));
    const double second = cur - 2 * prev1 + prev2;
    if (second > tol * scale)
      throw ConcavityError(w.name() + ": second difference " + detail::format_param(second) +
                           " > 0 at x=" + detail::format_param(x - 0.5));
    prev2 = prev1;
    prev1 = cur;
  }
}

struct Theorem32Result {
  RadialProfile u;
  CriterionReport report;
};

/// Builds u and verifies omega(s+t)/(omega(s)omega(t)) <= u(tau(s)) + u(tau(t))
/// for all s, t in the d-ball of the given radius.
///
/// The left side only depends on (tau(s), tau(t), tau(s+t)) and every length
/// triple (m, n, k) with |m-n| <= k <= m+n is attained in Z^d, so scanning
/// all such triples covers every pair. For d = 1 the pairs are additionally
/// enumerated directly, for d >= 2 on the ball of radius `brute_radius`.
inline Theorem32Result theorem32_u(const Weight& w, int d, std::int64_t radius,
                                   std::int64_t brute_radius = 12, double tol = 1e-12) {
  if (d < 1 || d > kMaxDim) throw DimensionError("dimension out of range");
  if (radius < 0) throw ParamError("radius must be nonnegative");
  require_concave_rho(w, 2.0 * static_cast<double>(radius));
  Theorem32Result res{theorem32_profile(w), {}};
  auto& r = res.report;
  r.id = "thm32";
  std::vector<double> rho(static_cast<std::size_t>(2 * radius + 1)), u(radius + 1);
  for (std::int64_t n = 0; n <= 2 * radius; ++n) rho[n] = w.rho(static_cast<double>(n));
  for (std::int64_t n = 0; n <= radius; ++n) u[n] = res.u(n);

  double worst = -std::numeric_limits<double>::infinity();
  Json worst_at;
  std::uint64_t checked = 0;
  auto record = [&](double viol, Json at) {
    if (viol > worst) {
      worst = viol;
      worst_at = std::move(at);
    }
  };
  for (std::int64_t m = 0; m <= radius; ++m) {
    for (std::int64_t n = 0; n <= radius; ++n) {
      const double bound = u[m] + u[n];
      for (std::int64_t k = std::abs(m - n); k <= m + n; ++k) {
        const double lhs = std::exp(rho[k] - rho[m] - rho[n]);
        ++checked;
        if (lhs - bound > worst) record(lhs - bound, Json::array({m, n, k}));
      }
    }
  }
  r.evidence["length_triples_checked"] = checked;
  const std::int64_t br = d == 1 ? radius : std::min(radius, brute_radius);
  const Cocycle cob = coboundary(w);
  const auto direct = decomposition_bound_check(
      cob, [&u](std::int64_t n) { return u[n]; }, [&u](std::int64_t n) { return u[n]; }, d, br);
  r.evidence["direct_pairs_checked"] = direct.pairs_checked;
  r.evidence["direct_radius"] = br;
  r.evidence["direct_max_violation"] = direct.max_violation;
  record(direct.max_violation, Json::array({direct.s.to_vector(), direct.t.to_vector()}));

  r.evidence["radius"] = radius;
  r.evidence["dimension"] = d;
  r.evidence["max_violation"] = worst;
  r.evidence["argmax"] = worst_at;
  r.evidence["weight"] = detail::weight_json(w);
  Json us = Json::array();
  for (std::int64_t n : {0, 1, 2, 5, 10, 100})
    if (n <= radius) us.push_back(Json::array({n, u[n]}));
  r.derived["u_samples"] = std::move(us);
  r.derived["u"] = "exp(rho(2n) - 2 rho(n))";
  if (worst <= tol) {
    r.verdict = CriterionVerdict::Holds;
    r.summary = "bound verified for all pairs with tau <= " + std::to_string(radius);
  } else {
    r.verdict = CriterionVerdict::Fails;
    r.summary = "bound violated by " + detail::format_param(worst);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Conditions (i)-(iii)
// ---------------------------------------------------------------------------

/// (i): u*omega bounded and omega^{-1} in S^Psi.
///
/// u(n) omega(n) = exp(rho(2n) - rho(n)); boundedness is read off a grid
/// scan for n <= 1e4 and the limit of rho(2x) - rho(x) at x in {1e4, 1e5, 1e6}.
inline CriterionReport thm33_condition_i(const Weight& w, const YoungFunction& psi, int d,
                                         const SeriesPolicy& policy = {},
                                         const Tolerances& tol = default_tolerances()) {
  CriterionReport r;
  r.id = "thm33-i";
  r.evidence["weight"] = detail::weight_json(w);
  r.evidence["psi"] = detail::young_json(psi);
  r.evidence["dimension"] = d;
  auto g = [&w](double x) { return w.rho(2 * x) - w.rho(x); };
  double grid_max = -std::numeric_limits<double>::infinity();
  for (std::int64_t n = 0; n <= 10000; ++n) grid_max = std::max(grid_max, g(static_cast<double>(n)));
  const auto lim = estimate_limit({g(1e4), g(1e5), g(1e6)}, tol.limit_rel);
  CriterionVerdict bounded = CriterionVerdict::Inconclusive;
  double sup_estimate = std::numeric_limits<double>::infinity();
  if (lim.kind == LimitKind::Finite) {
    bounded = CriterionVerdict::Holds;
    sup_estimate = std::exp(std::max(grid_max, lim.value + lim.spread));
  } else if (lim.kind == LimitKind::PlusInfinity) {
    bounded = CriterionVerdict::Fails;
  } else if (lim.kind == LimitKind::MinusInfinity) {
    bounded = CriterionVerdict::Holds;
    sup_estimate = std::exp(grid_max);
  }
  if (w.has_rho_prime()) {
    // Sign of (rho(2x) - rho(x))' = 2 rho'(2x) - rho'(x) on the tail.
    bool nonincreasing = true, nondecreasing = true;
    for (double x : geometric_grid(1e4, std::pow(10.0, 0.25), 9)) {
      const double dg = 2 * w.rho_prime(2 * x) - w.rho_prime(x);
      if (dg > 0) nonincreasing = false;
      if (dg < 0) nondecreasing = false;
    }
    r.evidence["u_omega_log_tail_monotone"] =
        nonincreasing ? "nonincreasing" : (nondecreasing ? "nondecreasing" : "mixed");
  }
  r.evidence["u_omega_log_grid_max"] = grid_max;
  r.evidence["u_omega_log_limit"] = detail::to_json(lim);
  r.evidence["u_omega_bounded"] = to_string(bounded);
  if (std::isfinite(sup_estimate)) r.derived["u_omega_sup_estimate"] = sup_estimate;

  const auto mv = s_psi_membership(
      psi, d, [&w](std::int64_t n) { return std::exp(-w.rho(static_cast<double>(n))); }, policy);
  r.evidence["inverse_weight_in_S_psi"] = detail::to_json(mv);
  r.verdict = combine({bounded, from_series(mv.verdict)});
  r.summary = std::string("hypotheses of condition (i): u*omega bounded ") + to_string(bounded) +
              ", omega^-1 in S^Psi " + to_string(mv.verdict);
  return r;
}

/// (ii): v(n) = exp(n^2 q'(n)) in S^Psi with q(x) = rho(x)/x, together with
/// the monotonicity of x^2 q'(x) = x rho'(x) - rho(x) on the sampled grid.
inline CriterionReport thm33_condition_ii(const Weight& w, const YoungFunction& psi, int d,
                                          const SeriesPolicy& policy = {}) {
  if (!w.has_rho_prime())
    throw DifferentiabilityError("weight " + w.name() + " has no analytic rho'");
  CriterionReport r;
  r.id = "thm33-ii";
  r.evidence["weight"] = detail::weight_json(w);
  r.evidence["psi"] = detail::young_json(psi);
  r.evidence["dimension"] = d;
  auto h = [&w](std::int64_t n) {
    if (n == 0) return 0.0;
    const double x = static_cast<double>(n);
    return x * w.rho_prime(x) - w.rho(x);
  };
  bool monotone = true;
  std::int64_t bad = -1;
  double prev = h(1);
  for (std::int64_t n = 2; n <= 10000; ++n) {
    const double cur = h(n);
    if (cur > prev + 1e-12 * std::max(1.0, std::abs(cur))) {
      monotone = false;
      bad = n;
      break;
    }
    prev = cur;
  }
  r.evidence["x2_q_prime_nonincreasing"] = monotone;
  if (!monotone) r.evidence["x2_q_prime_increase_at"] = bad;
  Json hs = Json::array();
  for (std::int64_t n : {1, 10, 100, 1000, 10000}) hs.push_back(Json::array({n, h(n)}));
  r.derived["x2_q_prime_samples"] = std::move(hs);

  const auto mv = s_psi_membership(psi, d, [&h](std::int64_t n) { return std::exp(h(n)); }, policy);
  r.evidence["v_in_S_psi"] = detail::to_json(mv);
  const CriterionVerdict mono = monotone ? CriterionVerdict::Holds : CriterionVerdict::Inconclusive;
  r.verdict = combine({from_series(mv.verdict), mono});
  r.summary = std::string("hypotheses of condition (ii): v in S^Psi ") + to_string(mv.verdict) +
              (monotone ? "" : ", x^2 q'(x) not monotone on grid");
  return r;
}

/// (iii): lim x^2 rho''(x) < -d/l, with l the log-log slope of Psi at 0.
///
/// Holds iff (-d/l) - L exceeds limit_margin times the combined uncertainty
/// (spread of L plus the propagated half width of l, floored at 1e-9);
/// Fails iff L - (-d/l) exceeds it; otherwise Inconclusive.
inline CriterionReport thm33_condition_iii(const Weight& w, const YoungFunction& psi, int d,
                                           const Tolerances& tol = default_tolerances()) {
  CriterionReport r;
  r.id = "thm33-iii";
  r.evidence["weight"] = detail::weight_json(w);
  r.evidence["psi"] = detail::young_json(psi);
  r.evidence["dimension"] = d;
  std::array<double, 3> s{};
  const std::array<double, 3> xs{1e2, 1e3, 1e4};
  for (int i = 0; i < 3; ++i) s[i] = xs[i] * xs[i] * w.rho_second(xs[i]);
  const auto lim = estimate_limit(s, tol.limit_rel);
  r.evidence["limit_x2_rho_second"] = detail::to_json(lim);
  SlopeEstimate l;
  try {
    l = l_exponent(psi);
  } catch (const NoStableSlope& e) {
    r.evidence["l"] = e.what();
    r.verdict = CriterionVerdict::Inconclusive;
    r.summary = std::string("no stable exponent l: ") + e.what();
    return r;
  }
  r.evidence["l"] = l.l;
  r.evidence["l_half_width"] = l.half_width;
  const double threshold = -static_cast<double>(d) / l.l;
  r.derived["threshold"] = threshold;
  switch (lim.kind) {
    case LimitKind::MinusInfinity:
      r.verdict = CriterionVerdict::Holds;
      break;
    case LimitKind::PlusInfinity:
      r.verdict = CriterionVerdict::Fails;
      break;
    case LimitKind::Unstable:
      r.verdict = CriterionVerdict::Inconclusive;
      break;
    case LimitKind::Finite: {
      const double unc = std::max(
          1e-9, tol.limit_margin * (lim.spread + static_cast<double>(d) * l.half_width / (l.l * l.l)));
      r.evidence["margin_required"] = unc;
      if (threshold - lim.value > unc)
        r.verdict = CriterionVerdict::Holds;
      else if (lim.value - threshold > unc)
        r.verdict = CriterionVerdict::Fails;
      else
        r.verdict = CriterionVerdict::Inconclusive;
      break;
    }
  }
  r.summary = std::string("hypothesis of condition (iii): lim x^2 rho'' = ") +
              (lim.kind == LimitKind::Finite ? detail::format_param(lim.value) : to_string(lim.kind)) +
              " vs -d/l = " + detail::format_param(threshold) + ": " + to_string(r.verdict);
  return r;
}

// ---------------------------------------------------------------------------
// Operator-algebra hypotheses on Z^d
// ---------------------------------------------------------------------------

/// Which of the three operator-algebra weight families w belongs to ("" when none).
inline std::string weight_family(const Weight& w, int d, const SeriesPolicy& policy = {}) {
  switch (w.kind()) {
    case WeightKind::Polynomial: {
      const auto sv = summability(radial_series(d, [&w](std::int64_t n) {
        return std::exp(-2 * w.rho(static_cast<double>(n)));
      }), policy);
      return sv.verdict == Verdict::Converges ? "polynomial with 1/omega in l2" : "";
    }
    case WeightKind::SubExp: return "subexponential sigma";
    case WeightKind::SubExp2: return "subexponential nu";
    default: return "";
  }
}

/// Grants the certificate iff (a) K x^2 <= Phi(x) near 0 (the discrete
/// growth condition, Z^d being discrete) and (b) sum_n sphere(d,n) u(n)^2
/// converges for u = v from the decomposition. (a) and (b) run concurrently.
inline CriterionReport operator_algebra_certificate(const YoungFunction& phi, const Weight& w, int d,
                                                    const SeriesPolicy& policy = {},
                                                    const Tolerances& tol = default_tolerances()) {
  CriterionReport r;
  r.id = "operator-algebra";
  r.evidence["phi"] = detail::young_json(phi);
  r.evidence["weight"] = detail::weight_json(w);
  r.evidence["dimension"] = d;

  auto growth = std::async(std::launch::async, [&phi, &tol]() -> std::pair<CriterionVerdict, Json> {
    Json j;
    try {
      const auto g = growth_class(phi, tol);
      j["satisfies_discrete"] = g.satisfies_discrete;
      j["k_discrete"] = g.k_discrete;
      j["x0"] = g.x0;
      j["second_derivative_at_zero"] = detail::to_json(g.second_derivative_at_zero);
      return {g.satisfies_discrete ? CriterionVerdict::Holds : CriterionVerdict::Fails, j};
    } catch (const InconclusiveGrowth& e) {
      j["error"] = e.what();
      return {CriterionVerdict::Inconclusive, j};
    }
  });
  auto series = std::async(std::launch::async, [&w, d, &policy]() {
    const RadialProfile u = theorem32_profile(w);
    return summability(radial_series(d, [u](std::int64_t n) {
      const double v = u(n);
      return v * v;
    }), policy);
  });
  CriterionVerdict a = CriterionVerdict::Inconclusive;
  Json growth_json;
  std::tie(a, growth_json) = growth.get();
  const SeriesVerdict sv = series.get();

  // Decomposition requires concave rho; a failure here denies the certificate.
  CriterionVerdict concave = CriterionVerdict::Holds;
  try {
    require_concave_rho(w, 2000.0);
  } catch (const ConcavityError& e) {
    concave = CriterionVerdict::Fails;
    r.evidence["concavity"] = e.what();
  }
  r.evidence["discrete_growth"] = growth_json;
  r.evidence["u_in_l2"] = detail::to_json(sv);
  const CriterionVerdict b = from_series(sv.verdict);
  r.verdict = combine({concave, a, b});
  r.derived["u"] = "exp(rho(2n) - 2 rho(n))";
  r.derived["v"] = "u";
  r.derived["weight_family"] = weight_family(w, d, policy);
  r.derived["intersection_phi"] = "sum:square," + phi.name();
  r.summary = std::string("operator-algebra hypotheses: discrete growth ") + to_string(a) +
              ", u in l2 " + to_string(sv.verdict) + " => certificate " +
              (r.verdict == CriterionVerdict::Holds
                   ? "granted"
                   : (r.verdict == CriterionVerdict::Fails ? "denied" : "inconclusive"));
  return r;
}

struct LpThreshold {
  bool banach_algebra = false;
  bool operator_algebra_claimed = false;
  double q = 0.0;
};

/// l^p_{omega_beta}(Z^d): Banach algebra iff beta > d/q; operator algebra
/// when additionally 1 < p <= 2 and beta > d/2.
inline LpThreshold lp_threshold(int d, double p, double beta) {
  if (d < 1) throw ParamError("d must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw ParamError("p must satisfy 1 < p < inf");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParamError("beta must be positive");
  LpThreshold t;
  t.q = p / (p - 1.0);
  t.banach_algebra = beta > static_cast<double>(d) / t.q;
  t.operator_algebra_claimed = p <= 2.0 && beta > static_cast<double>(d) / 2.0;
  return t;
}

}  // namespace tworlicz
