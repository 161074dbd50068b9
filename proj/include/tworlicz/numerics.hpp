#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "tworlicz/errors.hpp"

namespace tworlicz {

namespace detail {

inline std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParamError("cannot parse " + what + " from '" + s + "'");
  }
  if (pos != s.size()) throw ParamError("trailing characters in " + what + " '" + s + "'");
  return v;
}

}  // namespace detail

/// Numerical tolerances shared by all modules. The defaults can be
/// overridden process-wide through the TWORLICZ_TOL environment variable
/// (root and quadrature tolerance).
struct Tolerances {
  double root = 1e-10;          // absolute tolerance of root finding
  double quadrature = 1e-10;    // absolute tolerance of adaptive quadrature
  double limit_rel = 0.01;      // cross-decade agreement of limit estimates
  double limit_margin = 3.0;    // strict inequalities need margin > factor * spread
  double norm_rel = 1e-13;      // relative bracket width for norm solvers
  double sample = 1e-9;         // slack allowed in sampled invariants

  static Tolerances from_env() {
    Tolerances t;
    if (const char* env = std::getenv("TWORLICZ_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0.0 && std::isfinite(v)) {
        t.root = v;
        t.quadrature = v;
      }
    }
    return t;
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t = Tolerances::from_env();
  return t;
}

/// Points a * ratio^k for k = 0..count-1.
inline std::vector<double> geometric_grid(double a, double ratio, int count) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count));
  double x = a;
  for (int k = 0; k < count; ++k, x *= ratio) g.push_back(x);
  return g;
}

inline std::vector<double> linear_grid(double a, double b, int count) {
  std::vector<double> g;
  if (count == 1) return {a};
  g.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    g.push_back(a + (b - a) * static_cast<double>(k) / (count - 1));
  return g;
}

/// Solves f(x) = target for nondecreasing f on [lo, hi] with
/// f(lo) <= target <= f(hi). Stops when the bracket is below
/// max(abs_tol, rel_tol * |x|) or no longer shrinks.
template <class F>
double bisect_increasing(F&& f, double target, double lo, double hi,
                         double abs_tol, double rel_tol = 0.0,
                         int max_iter = 400) {
  for (int it = 0; it < max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= std::max(abs_tol, rel_tol * std::abs(mid))) break;
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return lo + 0.5 * (hi - lo);
}

/// Grows hi geometrically from `start` until f(hi) >= target.
template <class F>
double grow_upper_bracket(F&& f, double target, double start, double cap) {
  double hi = start;
  while (!(f(hi) >= target)) {
    hi *= 2.0;
    if (hi > cap || !std::isfinite(hi))
      throw BracketError("no bracket below cap " + std::to_string(cap) +
                         " for target " + std::to_string(target));
  }
  return hi;
}

struct MinimumResult {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the minimum of a unimodal f on [a, b].
template <class F>
MinimumResult golden_section_minimize(F&& f, double a, double b, double tol,
                                      int max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? MinimumResult{c, fc} : MinimumResult{d, fd};
}

enum class LimitKind { Finite, PlusInfinity, MinusInfinity, Unstable };

inline const char* to_string(LimitKind k) {
  switch (k) {
    case LimitKind::Finite: return "finite";
    case LimitKind::PlusInfinity: return "+inf";
    case LimitKind::MinusInfinity: return "-inf";
    case LimitKind::Unstable: return "unstable";
  }
  return "?";
}

/// Estimate of a limit from three samples taken at points approaching the
/// limit point by a constant factor (decades by default).
struct LimitEstimate {
  LimitKind kind = LimitKind::Unstable;
  double value = std::numeric_limits<double>::quiet_NaN();
  double spread = std::numeric_limits<double>::infinity();
  std::array<double, 3> samples{};
  std::string method;
};

/// Classifies three samples v[0], v[1], v[2] taken ever closer to the limit
/// point (each step shrinks the distance by `step`).
///
/// In order: direct agreement within rel_tol; geometric growth (x2 per step)
/// => +-inf; Richardson extrapolation assuming an O(h) error, the two
/// extrapolants agreeing within rel_tol; equal increments (c ln x) => +-inf;
/// both extrapolants negligible
/// against the sample scale => 0; geometric decay (/2 per step) => 0.
/// Anything else is Unstable.
inline LimitEstimate estimate_limit(const std::array<double, 3>& v,
                                    double rel_tol, double step = 10.0) {
  LimitEstimate e;
  e.samples = v;
  for (double x : v) {
    if (std::isnan(x)) {
      e.method = "nan sample";
      return e;
    }
  }
  const bool all_pos = v[0] > 0 && v[1] > 0 && v[2] > 0;
  const bool all_neg = v[0] < 0 && v[1] < 0 && v[2] < 0;
  if (std::isinf(v[2])) {
    if ((all_pos || all_neg) && std::abs(v[1]) >= std::abs(v[0])) {
      e.kind = v[2] > 0 ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
      e.value = v[2];
      e.spread = 0.0;
      e.method = "overflow growth";
    } else {
      e.method = "inf sample";
    }
    return e;
  }
  const double a0 = std::abs(v[0]), a1 = std::abs(v[1]), a2 = std::abs(v[2]);

  double direct = std::max(std::abs(v[0] - v[2]), std::abs(v[1] - v[2]));
  if (a2 > 0 && direct <= rel_tol * a2) {
    e.kind = LimitKind::Finite;
    e.value = v[2];
    e.spread = direct;
    e.method = "direct";
    return e;
  }
  if ((all_pos || all_neg) && a1 >= 2.0 * a0 && a2 >= 2.0 * a1) {
    e.kind = all_pos ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
    e.value = v[2];
    e.spread = 0.0;
    e.method = "geometric growth";
    return e;
  }
  const double r1 = (step * v[1] - v[0]) / (step - 1.0);
  const double r2 = (step * v[2] - v[1]) / (step - 1.0);
  const double scale = std::max({a0, a1, a2});
  if (std::abs(r2) > 0 && std::abs(r1 - r2) <= rel_tol * std::abs(r2)) {
    e.kind = LimitKind::Finite;
    e.value = r2;
    e.spread = std::abs(r1 - r2);
    e.method = "richardson";
    return e;
  }
  // c ln(x): equal increments per step, no extrapolant settles.
  const double d1 = a1 - a0, d2 = a2 - a1;
  if ((all_pos || all_neg) && d1 > 0 && d2 > 0 && std::abs(d1 - d2) <= 0.1 * d2) {
    e.kind = all_pos ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
    e.value = v[2];
    e.spread = 0.0;
    e.method = "logarithmic growth";
    return e;
  }
  if (std::max(std::abs(r1), std::abs(r2)) <= rel_tol * scale) {
    e.kind = LimitKind::Finite;
    e.value = 0.0;
    e.spread = std::max({std::abs(r1), std::abs(r2), a2});
    e.method = "richardson zero";
    return e;
  }
  if (!(v[0] > 0 && v[2] < 0) && !(v[0] < 0 && v[2] > 0) &&
      a1 <= 0.5 * a0 && a2 <= 0.5 * a1) {
    e.kind = LimitKind::Finite;
    e.value = 0.0;
    e.spread = a2;
    e.method = "geometric decay";
    return e;
  }
  e.method = "no agreement";
  return e;
}

/// Central second difference with step h = max(1e-4, 1e-6 x).
template <class F>
double central_second_difference(F&& f, double x) {
  const double h = std::max(1e-4, 1e-6 * std::abs(x));
  const double lo = std::max(0.0, x - h);
  const double hi = lo + 2.0 * h;
  const double mid = lo + h;
  return (f(hi) - 2.0 * f(mid) + f(lo)) / (h * h);
}

/// Central first difference with the same step rule.
template <class F>
double central_difference(F&& f, double x) {
  const double h = std::max(1e-4, 1e-6 * std::abs(x));
  const double lo = std::max(0.0, x - h);
  return (f(lo + 2.0 * h) - f(lo)) / (2.0 * h);
}

inline double relative_error(double got, double want) {
  const double den = std::max(std::abs(want), std::numeric_limits<double>::min());
  return std::abs(got - want) / den;
}

}  // namespace tworlicz
