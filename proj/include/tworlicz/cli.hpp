#pragma once

/// \file cli.hpp
/// \brief The `tworlicz` command line: argument parsing, dispatch to the
/// library and the exit-code contract.
///
/// Exit codes: 0 Holds / success, 1 Fails, 2 Inconclusive, 64 usage error,
/// 70 computation error, 74 I/O or file-format error.

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tworlicz/appendix_a.hpp"
#include "tworlicz/criteria.hpp"
#include "tworlicz/errors.hpp"
#include "tworlicz/io.hpp"
#include "tworlicz/lattice.hpp"
#include "tworlicz/orlicz.hpp"
#include "tworlicz/twist.hpp"
#include "tworlicz/young.hpp"

namespace tworlicz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitIo = 74;

/// Raised for semantic usage errors found after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Grid values lo, lo + step, ... <= hi, rounded to 12 decimals so rows
/// print as the user typed them.
inline std::vector<double> value_grid(double lo, double hi, double step) {
  if (!(step > 0) || !std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step))
    throw UsageError("grid needs finite bounds and a positive step");
  std::vector<double> g;
  if (hi < lo) return g;
  const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (long long k = 0; k < count; ++k)
    g.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
  return g;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& f : tworlicz::detail::split_top(s, ','))
    out.push_back(tworlicz::detail::parse_double(f, "list value"));
  return out;
}

inline void emit(std::ostream& out, const std::string& command, Json payload) {
  out << io::dump(io::with_header(command, std::move(payload)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

struct YoungShowArgs {
  std::string spec;
  std::string grid = "0,0.5,1,2,5";
};

inline int cmd_young_show(const YoungShowArgs& a, std::ostream& out) {
  const YoungFunction phi = young_from_spec(a.spec);
  const YoungPair pair = pair_of(phi);
  Json j;
  j["phi"] = tworlicz::detail::young_json(phi);
  j["provenance"] = to_string(pair.provenance);
  Json rows = Json::array();
  for (double x : detail::parse_list(a.grid)) {
    if (x < 0) throw ParamError("grid values must be nonnegative");
    Json r;
    r["x"] = x;
    r["Phi"] = tworlicz::detail::num(phi(x));
    r["phi"] = tworlicz::detail::num(phi.derivative(x));
    r["Psi"] = tworlicz::detail::num(pair.psi(x));
    rows.push_back(std::move(r));
  }
  j["values"] = std::move(rows);
  try {
    const auto g = growth_class(phi);
    Json gj;
    gj["satisfies_compact"] = g.satisfies_compact;
    gj["satisfies_discrete"] = g.satisfies_discrete;
    gj["satisfies_noncompact"] = g.satisfies_noncompact;
    gj["x0"] = g.x0;
    gj["k_compact"] = g.k_compact;
    gj["k_discrete"] = g.k_discrete;
    gj["k_noncompact"] = g.k_noncompact;
    j["growth"] = std::move(gj);
  } catch (const InconclusiveGrowth& e) {
    j["growth"] = e.what();
  }
  try {
    const auto l = l_exponent(pair.psi);
    j["psi_l_exponent"] = l.l;
    j["psi_l_half_width"] = l.half_width;
  } catch (const NoStableSlope& e) {
    j["psi_l_exponent"] = e.what();
  }
  detail::emit(out, "young show", std::move(j));
  return kExitOk;
}

struct NormArgs {
  std::string phi = "power:2";
  std::string input;
  std::string kind = "luxemburg";
  std::string weight;
};

inline int cmd_norm(const NormArgs& a, std::ostream& out) {
  const YoungFunction phi = young_from_spec(a.phi);
  const DiscreteFunction f = io::function_from_json(io::read_json_file(a.input));
  NormKind kind;
  if (a.kind == "luxemburg")
    kind = NormKind::Luxemburg;
  else if (a.kind == "orlicz")
    kind = NormKind::Orlicz;
  else
    throw UsageError("--kind must be luxemburg or orlicz");
  const double v = a.weight.empty() ? norm(kind, phi, f) : weighted_norm(phi, f, weight_from_spec(a.weight), kind);
  out << detail::fmt(v) << "\n";
  return kExitOk;
}

struct ConvArgs {
  std::string cocycle = "trivial";
  std::string f, g;
  std::string output;  // stdout when empty
  std::string report;  // report file; printed to stdout after the result otherwise
};

inline int cmd_conv(const ConvArgs& a, std::ostream& out) {
  const Cocycle omega = io::cocycle_from_spec(a.cocycle);
  const DiscreteFunction f = io::function_from_json(io::read_json_file(a.f));
  const DiscreteFunction g = io::function_from_json(io::read_json_file(a.g));
  const ConvolutionReport rep = twisted_convolve(omega, f, g);

  // Cocycle residuals on the supports involved.
  std::vector<Point> pts;
  for (const auto& [p, _] : f.entries()) pts.push_back(p);
  for (const auto& [p, _] : g.entries()) pts.push_back(p);
  std::vector<std::array<Point, 3>> triples;
  for (const auto& [r, _] : f.entries())
    for (const auto& [s, _2] : g.entries())
      for (const auto& [t, _3] : f.entries()) {
        if (triples.size() >= 4096) break;
        triples.push_back({r, s, t});
      }
  Json j;
  j["cocycle"] = rep.cocycle_id;
  j["flops"] = rep.flops;
  j["support_f"] = f.support_size();
  j["support_g"] = g.support_size();
  j["support_result"] = rep.result.support_size();
  j["normalization_residual"] = pts.empty() ? 0.0 : normalization_residual(omega, pts);
  j["identity_residual"] = triples.empty() ? 0.0 : cocycle_identity_residual(omega, triples);
  j["identity_triples"] = triples.size();

  const std::string result = io::dump(io::to_json(rep.result));
  if (a.output.empty())
    out << result;
  else
    io::write_text_file(a.output, result);
  if (a.report.empty())
    detail::emit(out, "conv", std::move(j));
  else
    io::write_text_file(a.report, io::dump(io::with_header("conv", std::move(j))));
  return kExitOk;
}

struct CheckArgs {
  std::string weight = "poly:1";
  std::string phi;   // Psi is its complement
  std::string psi;   // overrides --phi
  int d = 1;
  std::int64_t n = 500;
  std::int64_t radius = 200;
  double rho_power = 0.0;  // lemma: log sigma(n) = n^power instead of the weight
  std::string condition = "all";
  std::string regime = "discrete";
  double p = 2.0;
  double beta = 1.0;
};

namespace detail {

inline YoungFunction resolve_psi(const CheckArgs& a) {
  if (!a.psi.empty()) return young_from_spec(a.psi);
  return pair_of(young_from_spec(a.phi.empty() ? "power:2" : a.phi)).psi;
}

inline int report_out(std::ostream& out, const std::string& command, const CriterionReport& r) {
  emit(out, command, io::to_json(r));
  return exit_code(r.verdict);
}

}  // namespace detail

inline int cmd_check_lemma(const CheckArgs& a, std::ostream& out) {
  std::function<double(std::int64_t)> ls;
  Json which;
  if (a.rho_power > 0) {
    const double k = a.rho_power;
    ls = [k](std::int64_t n) { return std::pow(static_cast<double>(n), k); };
    which = "log sigma(n) = n^" + detail::fmt(k);
  } else {
    const Weight w = weight_from_spec(a.weight);
    ls = [w](std::int64_t n) { return w.rho(static_cast<double>(n)); };
    which = tworlicz::detail::weight_json(w);
  }
  auto r = lemma_decreasing_quotient(ls, a.n);
  r.evidence["sigma"] = which;
  return detail::report_out(out, "check lemma", r);
}

inline int cmd_check_thm32(const CheckArgs& a, std::ostream& out) {
  const auto res = theorem32_u(weight_from_spec(a.weight), a.d, a.radius);
  return detail::report_out(out, "check thm32", res.report);
}

inline int cmd_check_thm33(const CheckArgs& a, std::ostream& out) {
  const Weight w = weight_from_spec(a.weight);
  const YoungFunction psi = detail::resolve_psi(a);
  std::vector<CriterionReport> reports;
  auto want = [&a](const char* c) { return a.condition == "all" || a.condition == c; };
  if (a.condition != "all" && a.condition != "i" && a.condition != "ii" && a.condition != "iii")
    throw UsageError("--condition must be i, ii, iii or all");
  if (want("i")) reports.push_back(thm33_condition_i(w, psi, a.d));
  if (want("ii")) {
    try {
      reports.push_back(thm33_condition_ii(w, psi, a.d));
    } catch (const DifferentiabilityError& e) {
      CriterionReport r;
      r.id = "thm33-ii";
      r.summary = e.what();
      reports.push_back(std::move(r));
    }
  }
  if (want("iii")) reports.push_back(thm33_condition_iii(w, psi, a.d));
  if (reports.size() == 1) return detail::report_out(out, "check thm33", reports.front());
  // Any one condition suffices.
  CriterionReport all;
  all.id = "thm33";
  bool any_holds = false, all_fail = true;
  Json parts = Json::array();
  for (const auto& r : reports) {
    any_holds = any_holds || r.verdict == CriterionVerdict::Holds;
    all_fail = all_fail && r.verdict == CriterionVerdict::Fails;
    parts.push_back(io::to_json(r));
  }
  all.verdict = any_holds ? CriterionVerdict::Holds
                          : (all_fail ? CriterionVerdict::Fails : CriterionVerdict::Inconclusive);
  all.evidence["conditions"] = std::move(parts);
  all.summary = any_holds ? "hypotheses of at least one of (i)-(iii) verified"
                          : (all_fail ? "no condition verified; all fail" : "no condition verified");
  return detail::report_out(out, "check thm33", all);
}

inline int cmd_check_growth(const CheckArgs& a, std::ostream& out) {
  const YoungFunction phi = young_from_spec(a.phi.empty() ? "power:2" : a.phi);
  CriterionReport r;
  r.id = "growth";
  r.evidence["phi"] = tworlicz::detail::young_json(phi);
  r.evidence["regime"] = a.regime;
  if (a.regime != "compact" && a.regime != "discrete" && a.regime != "noncompact")
    throw UsageError("--regime must be compact, discrete or noncompact");
  try {
    const auto g = growth_class(phi);
    r.evidence["satisfies_compact"] = g.satisfies_compact;
    r.evidence["satisfies_discrete"] = g.satisfies_discrete;
    r.evidence["satisfies_noncompact"] = g.satisfies_noncompact;
    r.evidence["x0"] = g.x0;
    r.evidence["k_compact"] = g.k_compact;
    r.evidence["k_discrete"] = g.k_discrete;
    r.evidence["k_noncompact"] = g.k_noncompact;
    r.evidence["second_derivative_at_infinity"] = tworlicz::detail::to_json(g.second_derivative_at_infinity);
    r.evidence["second_derivative_at_zero"] = tworlicz::detail::to_json(g.second_derivative_at_zero);
    const bool ok = a.regime == "compact"    ? g.satisfies_compact
                    : a.regime == "discrete" ? g.satisfies_discrete
                                             : g.satisfies_noncompact;
    r.verdict = ok ? CriterionVerdict::Holds : CriterionVerdict::Fails;
    r.summary = "K x^2 <= Phi(x) in the " + a.regime + " regime: " + (ok ? "yes" : "no");
  } catch (const InconclusiveGrowth& e) {
    r.verdict = CriterionVerdict::Inconclusive;
    r.summary = e.what();
  }
  return detail::report_out(out, "check growth", r);
}

inline int cmd_check_operator_algebra(const CheckArgs& a, std::ostream& out) {
  const auto r = operator_algebra_certificate(young_from_spec(a.phi.empty() ? "power:2" : a.phi),
                                              weight_from_spec(a.weight), a.d);
  return detail::report_out(out, "check operator-algebra", r);
}

inline int cmd_check_lp_threshold(const CheckArgs& a, std::ostream& out) {
  const auto t = lp_threshold(a.d, a.p, a.beta);
  CriterionReport r;
  r.id = "lp-threshold";
  r.evidence["d"] = a.d;
  r.evidence["p"] = a.p;
  r.evidence["q"] = t.q;
  r.evidence["beta"] = a.beta;
  r.derived["banach_algebra"] = t.banach_algebra;
  r.derived["operator_algebra_claimed"] = t.operator_algebra_claimed;
  r.verdict = t.banach_algebra ? CriterionVerdict::Holds : CriterionVerdict::Fails;
  r.summary = std::string("banach: ") + (t.banach_algebra ? "true" : "false") +
              ", operator: " + (t.operator_algebra_claimed ? "true" : "false");
  return detail::report_out(out, "check lp-threshold", r);
}

struct CounterexampleArgs {
  std::uint64_t n1 = 10;
  int segments = 5;
  std::string output;
  std::string log_output;
  std::string input;
  std::uint64_t horizon = 0;  // 0: twice the last anchor
};

inline int cmd_counterexample_build(const CounterexampleArgs& a, std::ostream& out) {
  const auto res = appendix::build_rho(a.n1, a.segments);
  const std::string text = io::dump(io::to_json(res.rho));
  if (a.output.empty())
    out << text;
  else
    io::write_text_file(a.output, text);
  if (!a.log_output.empty()) io::write_text_file(a.log_output, io::dump(io::to_json(res.log)));
  return kExitOk;
}

inline int cmd_counterexample_verify(const CounterexampleArgs& a, std::ostream& out) {
  const auto rho = io::rho_from_json(io::read_json_file(a.input));
  if (rho.anchors.empty()) throw FormatError("no anchors");
  const std::uint64_t N = a.horizon ? a.horizon : 2 * rho.anchors.back();
  try {
    const auto rep = appendix::verify_counterexample(rho, N);
    detail::emit(out, "counterexample verify", io::to_json(rep));
    return kExitOk;
  } catch (const VerificationError& e) {
    Json j;
    j["horizon"] = N;
    j["failure"] = e.what();
    detail::emit(out, "counterexample verify", std::move(j));
    return kExitFails;
  }
}

struct SweepArgs {
  std::string op = "lp-threshold";
  double beta_min = 0.4, beta_max = 1.2, beta_step = 0.1;
  int d = 1;
  double p = 2.0;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 1;
  std::size_t trials = 20;
};

struct SweepRow {
  double beta = 0;
  bool banach = false, operator_claimed = false;
  std::string iii, certificate, verdict;
  double probe_ratio = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

inline SweepRow sweep_row(const SweepArgs& a, double beta, std::uint64_t seed) {
  SweepRow row;
  row.beta = beta;
  try {
    const auto t = lp_threshold(a.d, a.p, beta);
    row.banach = t.banach_algebra;
    row.operator_claimed = t.operator_algebra_claimed;
    const Weight w = polynomial_weight(beta);
    const YoungFunction phi = power_young(a.p);
    const YoungFunction psi = pair_of(phi).psi;
    row.iii = to_string(thm33_condition_iii(w, psi, a.d).verdict);
    if (a.op == "lp-threshold") {
      row.verdict = t.banach_algebra ? "Holds" : "Fails";
    } else if (a.op == "thm33-iii") {
      row.verdict = row.iii;
    } else if (a.op == "operator-algebra") {
      row.certificate = to_string(operator_algebra_certificate(phi, w, a.d).verdict);
      row.verdict = row.certificate;
    } else if (a.op == "probe") {
      FunctionSampler sampler;
      sampler.dim = a.d;
      sampler.support_radius = 10;
      sampler.max_support = 10;
      row.probe_ratio = submultiplicativity_probe(phi, coboundary(w), sampler, a.trials, seed).max_ratio;
      row.verdict = "Holds";
    }
  } catch (const tworlicz::Error& e) {
    row.error = e.what();
    row.verdict = "Inconclusive";
  }
  return row;
}

inline int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  static const std::vector<std::string> ops{"lp-threshold", "thm33-iii", "operator-algebra", "probe"};
  if (std::find(ops.begin(), ops.end(), a.op) == ops.end()) throw UsageError("unknown sweep op '" + a.op + "'");
  if (a.format != "csv" && a.format != "json") throw UsageError("--format must be csv or json");
  const auto grid = detail::value_grid(a.beta_min, a.beta_max, a.beta_step);
  if (grid.empty()) throw UsageError("empty parameter grid");
  // Rows run concurrently; each gets its own seed and results are joined in grid order.
  std::vector<std::future<SweepRow>> futures;
  for (std::size_t i = 0; i < grid.size(); ++i)
    futures.push_back(std::async(std::launch::async, sweep_row, std::cref(a), grid[i], a.seed + i));
  std::vector<SweepRow> rows;
  for (auto& f : futures) rows.push_back(f.get());

  std::ostringstream os;
  bool inconclusive = false;
  for (const auto& r : rows) inconclusive = inconclusive || r.verdict == "Inconclusive";
  if (a.format == "csv") {
    os << "# op=" << a.op << " d=" << a.d << " p=" << detail::fmt(a.p) << " seed=" << a.seed << "\n";
    os << "# columns: beta, d, p, q, lp_banach (beta > d/q), lp_operator (p <= 2 and beta > d/2), "
          "thm33_iii (condition iii verdict), certificate (operator-algebra op only), "
          "probe_ratio (probe op only), verdict (of op), error\n";
    os << "beta,d,p,q,lp_banach,lp_operator,thm33_iii,certificate,probe_ratio,verdict,error\n";
    for (const auto& r : rows) {
      os << detail::fmt(r.beta) << "," << a.d << "," << detail::fmt(a.p) << ","
         << detail::fmt(a.p / (a.p - 1)) << "," << (r.banach ? "true" : "false") << ","
         << (r.operator_claimed ? "true" : "false") << "," << r.iii << "," << r.certificate << ","
         << (std::isnan(r.probe_ratio) ? "" : detail::fmt(r.probe_ratio)) << "," << r.verdict << ",\""
         << r.error << "\"\n";
    }
  } else {
    Json rowsj = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["beta"] = r.beta;
      j["lp_banach"] = r.banach;
      j["lp_operator"] = r.operator_claimed;
      j["thm33_iii"] = r.iii;
      if (!r.certificate.empty()) j["certificate"] = r.certificate;
      if (!std::isnan(r.probe_ratio)) j["probe_ratio"] = r.probe_ratio;
      j["verdict"] = r.verdict;
      if (!r.error.empty()) j["error"] = r.error;
      rowsj.push_back(std::move(j));
    }
    Json j;
    j["op"] = a.op;
    j["d"] = a.d;
    j["p"] = a.p;
    j["seed"] = a.seed;
    j["rows"] = std::move(rowsj);
    os << io::dump(io::with_header("sweep", std::move(j)));
  }
  if (a.output.empty())
    out << os.str();
  else
    io::write_text_file(a.output, os.str());
  return inconclusive ? kExitInconclusive : kExitOk;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Runs one command line (without the program name).
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted Orlicz algebras on Z^d: norms, convolutions and criteria", "tworlicz"};
  app.require_subcommand(1);
  std::function<int()> action;

  // young show
  YoungShowArgs ya;
  auto* young = app.add_subcommand("young", "Young functions");
  young->require_subcommand(1);
  auto* show = young->add_subcommand("show", "values, complement and growth class of a Young function");
  show->add_option("spec", ya.spec, "catalog spec, e.g. power:3, xlog, exp")->required();
  show->add_option("--grid", ya.grid, "comma-separated x values");
  show->callback([&] { action = [&] { return cmd_young_show(ya, out); }; });

  // norm
  NormArgs na;
  auto* normc = app.add_subcommand("norm", "Luxemburg or Orlicz norm of a function file");
  normc->add_option("--phi", na.phi, "Young function spec");
  normc->add_option("--input", na.input, "DiscreteFunction file")->required();
  normc->add_option("--kind", na.kind, "luxemburg or orlicz");
  normc->add_option("--weight", na.weight, "weight spec; norm of f*omega");
  normc->callback([&] { action = [&] { return cmd_norm(na, out); }; });

  // conv
  ConvArgs ca;
  auto* conv = app.add_subcommand("conv", "twisted convolution of two function files");
  conv->add_option("--cocycle", ca.cocycle, "trivial, heisenberg:t, coboundary:<weight>, a*b or JSON");
  conv->add_option("--f", ca.f, "first DiscreteFunction file")->required();
  conv->add_option("--g", ca.g, "second DiscreteFunction file")->required();
  conv->add_option("-o,--output", ca.output, "result file (stdout if omitted)");
  conv->add_option("--report", ca.report, "report file (stdout if omitted)");
  conv->callback([&] { action = [&] { return cmd_conv(ca, out); }; });

  // check
  CheckArgs ka;
  auto* check = app.add_subcommand("check", "criterion checks (exit 0 Holds, 1 Fails, 2 Inconclusive)");
  check->require_subcommand(1);
  auto add_weight = [&ka](CLI::App* c) { c->add_option("--weight", ka.weight, "poly:b, subexp:a,C, subexp2:g,C, exp:C, trivial"); };
  auto add_dim = [&ka](CLI::App* c) { c->add_option("-d,--dim", ka.d, "lattice dimension"); };

  auto* lemma = check->add_subcommand("lemma", "decreasing-quotient lemma for sigma = exp(rho)");
  add_weight(lemma);
  lemma->add_option("-N,--N", ka.n, "check 0 <= m,n <= N");
  lemma->add_option("--rho-power", ka.rho_power, "use log sigma(n) = n^k instead of the weight");
  lemma->callback([&] { action = [&] { return cmd_check_lemma(ka, out); }; });

  auto* thm32 = check->add_subcommand("thm32", "decomposition bound with u = exp(rho(2n) - 2 rho(n))");
  add_weight(thm32);
  add_dim(thm32);
  thm32->add_option("--radius", ka.radius, "all pairs with tau <= radius");
  thm32->callback([&] { action = [&] { return cmd_check_thm32(ka, out); }; });

  auto* thm33 = check->add_subcommand("thm33", "conditions (i)-(iii) for the weighted algebra");
  add_weight(thm33);
  add_dim(thm33);
  thm33->add_option("--phi", ka.phi, "Young function; Psi is its complement");
  thm33->add_option("--psi", ka.psi, "Psi directly");
  thm33->add_option("--condition", ka.condition, "i, ii, iii or all");
  thm33->callback([&] { action = [&] { return cmd_check_thm33(ka, out); }; });

  auto* growth = check->add_subcommand("growth", "K x^2 <= Phi(x) in a regime");
  growth->add_option("--phi", ka.phi, "Young function spec");
  growth->add_option("--regime", ka.regime, "compact, discrete or noncompact");
  growth->callback([&] { action = [&] { return cmd_check_growth(ka, out); }; });

  auto* opalg = check->add_subcommand("operator-algebra", "operator-algebra hypotheses on Z^d");
  add_weight(opalg);
  add_dim(opalg);
  opalg->add_option("--phi", ka.phi, "Young function spec");
  opalg->callback([&] { action = [&] { return cmd_check_operator_algebra(ka, out); }; });

  auto* lp = check->add_subcommand("lp-threshold", "Banach / operator algebra thresholds for l^p_{omega_beta}");
  add_dim(lp);
  lp->add_option("-p,--p", ka.p, "exponent 1 < p < inf");
  lp->add_option("--beta", ka.beta, "weight order beta > 0");
  lp->callback([&] { action = [&] { return cmd_check_lp_threshold(ka, out); }; });

  // counterexample
  CounterexampleArgs xa;
  auto* cex = app.add_subcommand("counterexample", "tangent-line construction of rho");
  cex->require_subcommand(1);
  auto* build = cex->add_subcommand("build", "build rho");
  build->add_option("--n1", xa.n1, "first anchor (> 2)");
  build->add_option("--segments", xa.segments, "number of tangent pieces K");
  build->add_option("-o,--output", xa.output, "output file (stdout if omitted)");
  build->add_option("--log", xa.log_output, "construction log file");
  build->callback([&] { action = [&] { return cmd_counterexample_build(xa, out); }; });
  auto* verify = cex->add_subcommand("verify", "verify properties (i)-(v)");
  verify->add_option("input", xa.input, "rho file")->required();
  verify->add_option("--horizon", xa.horizon, "largest integer checked (default 2 n_K)");
  verify->callback([&] { action = [&] { return cmd_counterexample_verify(xa, out); }; });

  // sweep
  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "beta sweep for omega_beta on Z^d");
  sweep->add_option("--op", sa.op, "lp-threshold, thm33-iii, operator-algebra or probe");
  sweep->add_option("--beta-min", sa.beta_min);
  sweep->add_option("--beta-max", sa.beta_max);
  sweep->add_option("--beta-step", sa.beta_step);
  sweep->add_option("-d,--dim", sa.d);
  sweep->add_option("-p,--p", sa.p);
  sweep->add_option("--format", sa.format, "csv or json");
  sweep->add_option("-o,--output", sa.output, "output file (stdout if omitted)");
  sweep->add_option("--seed", sa.seed, "base seed of randomized ops");
  sweep->add_option("--trials", sa.trials, "probe trials per row");
  sweep->callback([&] { action = [&] { return cmd_sweep(sa, out); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!action) {
    err << "usage error: no command\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParamError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitIo;
  } catch (const tworlicz::Error& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitSoftware;
  } catch (const std::exception& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitSoftware;
  }
}

}  // namespace tworlicz::cli
