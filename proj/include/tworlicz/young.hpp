#pragma once

/// \file young.hpp
/// \brief Young functions, complementary (Legendre) pairs and growth classes.
///
/// A YoungFunction is an immutable bundle of Phi, its right-derivative phi and
/// (when known) Phi'' and a closed-form complement. Numeric complements are
/// computed by solving phi(x*) = y, which needs phi strictly increasing;
/// functions reaching +inf at a finite point are not representable.

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tworlicz/errors.hpp"
#include "tworlicz/numerics.hpp"

namespace tworlicz {

class YoungFunction {
 public:
  using Fn = std::function<double(double)>;

  struct Parts {
    std::string name;    // catalog spec, e.g. "power:3"
    std::string family;  // e.g. "power"
    std::vector<std::pair<std::string, double>> params;
    Fn value;
    Fn derivative;
    Fn second_derivative;  // optional; central differences of phi otherwise
    std::function<YoungFunction()> analytic_conjugate;  // optional
  };

  explicit YoungFunction(Parts parts)
      : impl_(std::make_shared<const Parts>(std::move(parts))) {}

  double operator()(double x) const { return impl_->value(x); }
  double derivative(double x) const { return impl_->derivative(x); }

  double second_derivative(double x) const {
    if (impl_->second_derivative) return impl_->second_derivative(x);
    const double h = x > 0 ? 1e-4 * x : 1e-8;
    const double lo = std::max(0.0, x - h);
    return (impl_->derivative(lo + 2 * h) - impl_->derivative(lo)) / (2 * h);
  }

  bool has_analytic_second_derivative() const {
    return static_cast<bool>(impl_->second_derivative);
  }
  bool has_analytic_conjugate() const {
    return static_cast<bool>(impl_->analytic_conjugate);
  }
  YoungFunction analytic_conjugate() const {
    if (!impl_->analytic_conjugate)
      throw ParamError("no closed-form complement for " + impl_->name);
    return impl_->analytic_conjugate();
  }

  const std::string& name() const { return impl_->name; }
  const std::string& family() const { return impl_->family; }
  const std::vector<std::pair<std::string, double>>& params() const {
    return impl_->params;
  }
  const Parts& parts() const { return *impl_; }

 private:
  std::shared_ptr<const Parts> impl_;
};

enum class PairProvenance { Analytic, NumericLegendre, NumericQuadrature };

inline const char* to_string(PairProvenance p) {
  switch (p) {
    case PairProvenance::Analytic: return "analytic";
    case PairProvenance::NumericLegendre: return "numeric-legendre";
    case PairProvenance::NumericQuadrature: return "numeric-quadrature";
  }
  return "?";
}

struct YoungPair {
  YoungFunction phi;
  YoungFunction psi;
  PairProvenance provenance;
};


// ---------------------------------------------------------------------------
// Built-in catalog
// ---------------------------------------------------------------------------

/// Phi(x) = c x^p with p > 1. power:p is c = 1/p, square is c = 1, p = 2.
inline YoungFunction scaled_power(double c, double p) {
  if (!(p > 1.0) || !(c > 0.0) || !std::isfinite(p) || !std::isfinite(c))
    throw ParamError("scaled power needs c > 0 and p > 1");
  YoungFunction::Parts parts;
  if (std::abs(c * p - 1.0) < 1e-15) {
    parts.name = "power:" + detail::format_param(p);
    parts.family = "power";
    parts.params = {{"p", p}};
  } else if (c == 1.0 && p == 2.0) {
    parts.name = "square";
    parts.family = "square";
  } else {
    parts.name = "scaled_power:" + detail::format_param(c) + "," +
                 detail::format_param(p);
    parts.family = "scaled_power";
    parts.params = {{"c", c}, {"p", p}};
  }
  parts.value = [c, p](double x) { return c * std::pow(x, p); };
  parts.derivative = [c, p](double x) { return c * p * std::pow(x, p - 1); };
  parts.second_derivative = [c, p](double x) {
    if (x == 0.0) {
      if (p < 2.0) return std::numeric_limits<double>::infinity();
      if (p > 2.0) return 0.0;
    }
    return c * p * (p - 1) * std::pow(x, p - 2);
  };
  // sup_x xy - c x^p = c (p-1) (cp)^{-q} y^q with q = p / (p-1).
  parts.analytic_conjugate = [c, p] {
    const double q = p / (p - 1.0);
    const double cq = c * (p - 1.0) * std::pow(c * p, -q);
    return scaled_power(cq, q);
  };
  return YoungFunction(std::move(parts));
}

inline YoungFunction power_young(double p) {
  if (!(p > 1.0)) throw ParamError("power:p needs p > 1");
  return scaled_power(1.0 / p, p);
}

inline YoungFunction entropy_young();

/// e^x - x - 1, complement (1+y) ln(1+y) - y.
inline YoungFunction exp_young() {
  YoungFunction::Parts parts;
  parts.name = "exp";
  parts.family = "exp";
  parts.value = [](double x) {
    if (x < 1e-3)
      return x * x * (0.5 + x * (1.0 / 6 + x * (1.0 / 24 + x / 120)));
    return std::expm1(x) - x;
  };
  parts.derivative = [](double x) { return std::expm1(x); };
  parts.second_derivative = [](double x) { return std::exp(x); };
  parts.analytic_conjugate = [] { return entropy_young(); };
  return YoungFunction(std::move(parts));
}

/// (1+x) ln(1+x) - x, complement e^y - y - 1.
inline YoungFunction entropy_young() {
  YoungFunction::Parts parts;
  parts.name = "entropy";
  parts.family = "entropy";
  parts.value = [](double x) {
    if (x < 1e-3)
      return x * x * (0.5 + x * (-1.0 / 6 + x * (1.0 / 12 - x / 20)));
    return (1 + x) * std::log1p(x) - x;
  };
  parts.derivative = [](double x) { return std::log1p(x); };
  parts.second_derivative = [](double x) { return 1.0 / (1.0 + x); };
  parts.analytic_conjugate = [] { return exp_young(); };
  return YoungFunction(std::move(parts));
}

inline YoungFunction cosh_young();

/// Complement of cosh x - 1: y asinh y - sqrt(1+y^2) + 1.
inline YoungFunction cosh_conjugate_young() {
  YoungFunction::Parts parts;
  parts.name = "cosh_conj";
  parts.family = "cosh_conj";
  parts.value = [](double y) {
    return y * std::asinh(y) - y * y / (std::sqrt(1 + y * y) + 1);
  };
  parts.derivative = [](double y) { return std::asinh(y); };
  parts.second_derivative = [](double y) { return 1.0 / std::sqrt(1 + y * y); };
  parts.analytic_conjugate = [] { return cosh_young(); };
  return YoungFunction(std::move(parts));
}

inline YoungFunction cosh_young() {
  YoungFunction::Parts parts;
  parts.name = "cosh";
  parts.family = "cosh";
  parts.value = [](double x) {
    const double s = std::sinh(0.5 * x);
    return 2 * s * s;
  };
  parts.derivative = [](double x) { return std::sinh(x); };
  parts.second_derivative = [](double x) { return std::cosh(x); };
  parts.analytic_conjugate = [] { return cosh_conjugate_young(); };
  return YoungFunction(std::move(parts));
}

/// x^alpha ln(1+x), alpha >= 1 (alpha = 1 is the classic x ln(1+x)).
inline YoungFunction xlog_young(double alpha = 1.0) {
  if (!(alpha >= 1.0)) throw ParamError("xlog needs alpha >= 1");
  YoungFunction::Parts parts;
  parts.name = alpha == 1.0 ? "xlog" : "xlog:" + detail::format_param(alpha);
  parts.family = "xlog";
  parts.params = {{"alpha", alpha}};
  parts.value = [alpha](double x) { return std::pow(x, alpha) * std::log1p(x); };
  parts.derivative = [alpha](double x) {
    if (x == 0.0) return 0.0;
    return alpha * std::pow(x, alpha - 1) * std::log1p(x) +
           std::pow(x, alpha) / (1 + x);
  };
  parts.second_derivative = [alpha](double x) {
    const double l = std::log1p(x);
    if (x == 0.0) return alpha == 1.0 ? 2.0 : 0.0;
    return alpha * (alpha - 1) * std::pow(x, alpha - 2) * l +
           2 * alpha * std::pow(x, alpha - 1) / (1 + x) -
           std::pow(x, alpha) / ((1 + x) * (1 + x));
  };
  return YoungFunction(std::move(parts));
}

/// Pointwise sum of Young functions.
inline YoungFunction sum_young(std::vector<YoungFunction> terms) {
  if (terms.empty()) throw ParamError("sum needs at least one term");
  YoungFunction::Parts parts;
  parts.name = "sum:";
  for (std::size_t i = 0; i < terms.size(); ++i)
    parts.name += (i ? "," : "") + terms[i].name();
  parts.family = "sum";
  auto shared = std::make_shared<const std::vector<YoungFunction>>(std::move(terms));
  parts.value = [shared](double x) {
    double s = 0;
    for (const auto& t : *shared) s += t(x);
    return s;
  };
  parts.derivative = [shared](double x) {
    double s = 0;
    for (const auto& t : *shared) s += t.derivative(x);
    return s;
  };
  parts.second_derivative = [shared](double x) {
    double s = 0;
    for (const auto& t : *shared) s += t.second_derivative(x);
    return s;
  };
  return YoungFunction(std::move(parts));
}

/// Phi_0(x) = Phi(x^2).
inline YoungFunction square_composed(const YoungFunction& inner) {
  YoungFunction::Parts parts;
  parts.name = "square_compose:" + inner.name();
  parts.family = "square_compose";
  parts.value = [inner](double x) { return inner(x * x); };
  parts.derivative = [inner](double x) { return 2 * x * inner.derivative(x * x); };
  parts.second_derivative = [inner](double x) {
    const double x2 = x * x;
    const double tail = x2 == 0.0 ? 0.0 : 4 * x2 * inner.second_derivative(x2);
    return 2 * inner.derivative(x2) + tail;
  };
  return YoungFunction(std::move(parts));
}


/// Looks up a catalog entry: power:p, square, scaled_power:c,p, xlog[:alpha],
/// exp, cosh, cosh_conj, entropy, square_compose:<inner>, sum:<a>,<b>,...
inline YoungFunction young_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "power") return power_young(detail::parse_double(rest, "p"));
  if (head == "square" && rest.empty()) return scaled_power(1.0, 2.0);
  if (head == "scaled_power") {
    auto f = detail::split_top(rest, ',');
    if (f.size() != 2) throw ParamError("scaled_power:c,p expected");
    return scaled_power(detail::parse_double(f[0], "c"), detail::parse_double(f[1], "p"));
  }
  if (head == "xlog")
    return xlog_young(rest.empty() ? 1.0 : detail::parse_double(rest, "alpha"));
  if (head == "exp" && rest.empty()) return exp_young();
  if (head == "cosh" && rest.empty()) return cosh_young();
  if (head == "cosh_conj" && rest.empty()) return cosh_conjugate_young();
  if (head == "entropy" && rest.empty()) return entropy_young();
  if (head == "square_compose") return square_composed(young_from_spec(rest));
  if (head == "sum") {
    std::vector<YoungFunction> terms;
    // Terms with comma-separated parameters (scaled_power) cannot be summed.
    for (const auto& t : detail::split_top(rest, ',')) terms.push_back(young_from_spec(t));
    return sum_young(std::move(terms));
  }
  throw ParamError("unknown Young function '" + spec + "'");
}

inline std::vector<std::string> builtin_young_names() {
  return {"power:2", "power:3", "power:1.5", "xlog", "exp", "cosh", "entropy"};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct YoungCheck {
  bool ok = true;
  std::string failure;
};

/// Sampled check of the Young-function axioms on `grid` (sorted,
/// nonnegative): Phi(0)=0, strictly increasing, convex, phi nondecreasing,
/// and growth beyond the last grid value.
inline YoungCheck check_young(const YoungFunction& phi, const std::vector<double>& grid,
                              double tol = 1e-9) {
  YoungCheck r;
  auto fail = [&r](std::string m) {
    if (r.ok) {
      r.ok = false;
      r.failure = std::move(m);
    }
    return r;
  };
  if (std::abs(phi(0.0)) > tol) return fail("Phi(0) != 0");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i], b = grid[i + 1];
    if (b > a && !(phi(b) > phi(a)))
      return fail("not strictly increasing at x=" + detail::format_param(a));
    if (phi.derivative(b) < phi.derivative(a) - tol * std::max(1.0, std::abs(phi.derivative(a))))
      return fail("derivative decreases at x=" + detail::format_param(a));
    for (double lam : {0.25, 0.5, 0.75}) {
      const double mid = lam * a + (1 - lam) * b;
      const double chord = lam * phi(a) + (1 - lam) * phi(b);
      if (phi(mid) > chord + tol * std::max(1.0, chord))
        return fail("convexity violated between " + detail::format_param(a) + " and " +
                    detail::format_param(b));
    }
  }
  if (!grid.empty() && !(phi(2 * grid.back()) > phi(grid.back())))
    return fail("Phi does not grow beyond the sample grid");
  return r;
}

// ---------------------------------------------------------------------------
// Complementary functions
// ---------------------------------------------------------------------------

namespace detail {

/// x >= 0 with phi(x) = y; phi strictly increasing, phi(0) = 0.
inline double invert_derivative(const YoungFunction::Fn& phi, double y,
                                const Tolerances& tol, double cap = 1e300) {
  if (y <= 0.0) return 0.0;
  const double hi = grow_upper_bracket(phi, y, 1.0, cap);
  const double lo = hi > 1.0 ? hi / 2.0 : 0.0;
  return bisect_increasing(phi, y, lo, hi, tol.root * 1e-6, 1e-15);
}

}  // namespace detail

/// Numeric complement Psi(y) = x* y - Phi(x*) with phi(x*) = y.
/// Throws BracketError when phi stays below y up to the cap (bounded phi).
inline YoungFunction conjugate(const YoungFunction& phi,
                               const Tolerances& tol = default_tolerances()) {
  YoungFunction::Parts parts;
  parts.name = "conj:" + phi.name();
  parts.family = "conj";
  YoungFunction::Fn dphi = [phi](double x) { return phi.derivative(x); };
  parts.value = [phi, dphi, tol](double y) {
    if (y <= 0.0) return 0.0;
    const double x = detail::invert_derivative(dphi, y, tol);
    return std::max(0.0, x * y - phi(x));
  };
  parts.derivative = [dphi, tol](double y) {
    return detail::invert_derivative(dphi, y, tol);
  };
  parts.second_derivative = [phi, dphi, tol](double y) {
    const double x = detail::invert_derivative(dphi, y, tol);
    return 1.0 / phi.second_derivative(x);
  };
  return YoungFunction(std::move(parts));
}

/// The complementary pair of phi: closed form when available, numeric
/// Legendre transform otherwise.
inline YoungPair pair_of(const YoungFunction& phi,
                         const Tolerances& tol = default_tolerances()) {
  if (phi.has_analytic_conjugate())
    return {phi, phi.analytic_conjugate(), PairProvenance::Analytic};
  return {phi, conjugate(phi, tol), PairProvenance::NumericLegendre};
}

/// max over grid of |Psi*(x) - Phi(x)| where both transforms are numeric.
inline double biconjugate_residual(const YoungFunction& phi,
                                   const std::vector<double>& grid,
                                   const Tolerances& tol = default_tolerances()) {
  const YoungFunction bi = conjugate(conjugate(phi, tol), tol);
  double worst = 0.0;
  for (double x : grid) worst = std::max(worst, std::abs(bi(x) - phi(x)));
  return worst;
}

/// Phi(x) = int_0^x phi, Psi(y) = int_0^y phi^{-1}.
///
/// phi must be continuous, strictly increasing, phi(0)=0 and unbounded;
/// NonMonotoneInput/ParamError are raised when samples contradict this.
inline YoungPair make_pair_from_phi(YoungFunction::Fn phi_derivative,
                                    std::string name = "from_phi",
                                    const Tolerances& tol = default_tolerances()) {
  if (std::abs(phi_derivative(0.0)) > 1e-14) throw ParamError("phi(0) must be 0");
  const auto grid = geometric_grid(1e-6, 2.0, 60);
  double prev = 0.0;
  for (double x : grid) {
    const double v = phi_derivative(x);
    if (std::isinf(v) && v > 0) break;  // overflowed: unbounded, as required
    if (!(v > prev)) throw NonMonotoneInput("phi not strictly increasing near x=" +
                                            detail::format_param(x));
    prev = v;
  }

  auto integrate = [tol](const YoungFunction::Fn& f, double upper) {
    if (upper <= 0.0) return 0.0;
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
        f, 0.0, upper, 20, 1e-13, &err);
    if (!(err <= tol.quadrature * std::max(1.0, std::abs(v))))
      throw DivergenceError("quadrature error " + detail::format_param(err) +
                            " exceeds tolerance");
    return v;
  };
  YoungFunction::Fn inverse = [phi_derivative, tol](double y) {
    return detail::invert_derivative(phi_derivative, y, tol);
  };

  YoungFunction::Parts phi_parts;
  phi_parts.name = name;
  phi_parts.family = "from_phi";
  phi_parts.value = [phi_derivative, integrate](double x) {
    return integrate(phi_derivative, x);
  };
  phi_parts.derivative = phi_derivative;

  YoungFunction::Parts psi_parts;
  psi_parts.name = "conj:" + name;
  psi_parts.family = "from_phi_conj";
  psi_parts.value = [inverse, integrate](double y) { return integrate(inverse, y); };
  psi_parts.derivative = inverse;
  psi_parts.second_derivative = [phi_derivative, inverse](double y) {
    const double x = inverse(y);
    const double h = x > 0 ? 1e-4 * x : 1e-8;
    const double lo = std::max(0.0, x - h);
    return 2 * h / (phi_derivative(lo + 2 * h) - phi_derivative(lo));
  };
  return {YoungFunction(std::move(phi_parts)), YoungFunction(std::move(psi_parts)),
          PairProvenance::NumericQuadrature};
}

/// Minimum of Phi(x) + Psi(y) - x y over the grid product (>= 0 by Young).
inline double young_inequality_slack(const YoungPair& pair, const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
  std::vector<double> psi_y;
  psi_y.reserve(ys.size());
  for (double y : ys) psi_y.push_back(pair.psi(y));
  double worst = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    const double px = pair.phi(x);
    for (std::size_t j = 0; j < ys.size(); ++j)
      worst = std::min(worst, px + psi_y[j] - x * ys[j]);
  }
  return worst;
}

/// max over xs of |Phi(x) + Psi(phi(x)) - x phi(x)| (equality case).
inline double young_equality_residual(const YoungPair& pair, const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) {
    const double y = pair.phi.derivative(x);
    worst = std::max(worst, std::abs(pair.phi(x) + pair.psi(y) - x * y));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Growth classes: K x^2 <= Phi(x) near infinity / near zero / everywhere
// ---------------------------------------------------------------------------

struct GrowthClass {
  bool satisfies_compact = false;     // K x^2 <= Phi(x), x >= x0
  bool satisfies_discrete = false;    // K x^2 <= Phi(x), 0 <= x <= x0
  bool satisfies_noncompact = false;  // K x^2 <= Phi(x), x >= 0
  double x0 = 1.0;
  double k_compact = 0.0;
  double k_discrete = 0.0;
  double k_noncompact = 0.0;
  LimitEstimate second_derivative_at_infinity;
  LimitEstimate second_derivative_at_zero;
};

namespace detail {

inline bool limit_nonzero(const LimitEstimate& e, const Tolerances& tol) {
  if (e.kind == LimitKind::PlusInfinity) return true;
  return e.kind == LimitKind::Finite && e.value > 0 && e.value > tol.limit_margin * e.spread;
}

inline double min_ratio_over(const YoungFunction& phi, const std::vector<double>& xs) {
  double k = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    const double v = phi(x);
    if (std::isfinite(v)) k = std::min(k, v / (x * x));
  }
  return k;
}

}  // namespace detail

/// Applies the second-derivative limit tests (lim Phi'' at infinity and at
/// 0+) and confirms the witnessed constant K on a grid with x0 = 1.
/// By L'Hopital, lim Phi/x^2 = lim Phi''/2 whenever the latter exists, so a
/// zero limit makes the corresponding condition fail.
inline GrowthClass growth_class(const YoungFunction& phi,
                                const Tolerances& tol = default_tolerances()) {
  GrowthClass g;
  const std::array<double, 3> inf_pts{1e2, 1e3, 1e4};
  const std::array<double, 3> zero_pts{1e-2, 1e-3, 1e-4};
  std::array<double, 3> vi{}, vz{};
  for (int i = 0; i < 3; ++i) {
    vi[i] = phi.second_derivative(inf_pts[i]);
    vz[i] = phi.second_derivative(zero_pts[i]);
  }
  g.second_derivative_at_infinity = estimate_limit(vi, tol.limit_rel);
  g.second_derivative_at_zero = estimate_limit(vz, tol.limit_rel);
  if (g.second_derivative_at_infinity.kind == LimitKind::Unstable ||
      g.second_derivative_at_zero.kind == LimitKind::Unstable ||
      g.second_derivative_at_infinity.kind == LimitKind::MinusInfinity ||
      g.second_derivative_at_zero.kind == LimitKind::MinusInfinity)
    throw InconclusiveGrowth("limit of Phi'' for " + phi.name() + " oscillates (" +
                             g.second_derivative_at_infinity.method + ", " +
                             g.second_derivative_at_zero.method + ")");

  g.satisfies_compact = detail::limit_nonzero(g.second_derivative_at_infinity, tol);
  g.satisfies_discrete = detail::limit_nonzero(g.second_derivative_at_zero, tol);
  g.satisfies_noncompact = g.satisfies_compact && g.satisfies_discrete;

  if (g.satisfies_compact) {
    double k = detail::min_ratio_over(phi, geometric_grid(1.0, std::pow(10.0, 0.125), 33));
    const auto& e = g.second_derivative_at_infinity;
    if (e.kind == LimitKind::Finite) k = std::min(k, 0.5 * e.value);
    g.k_compact = k;
  }
  if (g.satisfies_discrete) {
    double k = detail::min_ratio_over(phi, geometric_grid(1e-6, std::pow(10.0, 0.125), 49));
    const auto& e = g.second_derivative_at_zero;
    if (e.kind == LimitKind::Finite) k = std::min(k, 0.5 * e.value);
    g.k_discrete = k;
  }
  if (g.satisfies_noncompact) g.k_noncompact = std::min(g.k_compact, g.k_discrete);
  return g;
}

/// (Phi_0, Psi_0) with Phi_0(x) = Phi(x^2) and Psi_0 its numeric complement.
inline YoungPair square_compose(const YoungFunction& phi,
                                const Tolerances& tol = default_tolerances()) {
  YoungFunction phi0 = square_composed(phi);
  return {phi0, conjugate(phi0, tol), PairProvenance::NumericLegendre};
}

struct SlopeEstimate {
  double l = 0.0;
  double half_width = 0.0;  // max deviation of per-decade slopes from l
  std::vector<double> local_slopes;
};

/// Log-log slope of Psi near 0 by least squares over x = 1e-1 ... 1e-6.
/// NoStableSlope when the per-decade slopes spread more than `max_spread`.
inline SlopeEstimate l_exponent(const YoungFunction& psi, double max_spread = 0.1) {
  std::vector<double> lx, ly;
  for (int k = 1; k <= 6; ++k) {
    const double x = std::pow(10.0, -k);
    const double v = psi(x);
    if (!(v > 0)) throw NoStableSlope("Psi(" + detail::format_param(x) + ") is not positive");
    lx.push_back(std::log(x));
    ly.push_back(std::log(v));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  SlopeEstimate s;
  s.l = sxy / sxx;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i + 1 < lx.size(); ++i) {
    const double local = (ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i]);
    s.local_slopes.push_back(local);
    lo = std::min(lo, local);
    hi = std::max(hi, local);
    s.half_width = std::max(s.half_width, std::abs(local - s.l));
  }
  if (hi - lo > max_spread)
    throw NoStableSlope("log-log slope of " + psi.name() + " varies by " +
                        detail::format_param(hi - lo) + " across decades");
  if (s.l < 1.0 - s.half_width)
    throw NoStableSlope("slope " + detail::format_param(s.l) + " below 1");
  return s;
}

}  // namespace tworlicz
