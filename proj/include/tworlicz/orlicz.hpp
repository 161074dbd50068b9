#pragma once

/// \file orlicz.hpp
/// \brief Discrete Orlicz spaces l^Phi(Z^d): modular, Luxemburg and Orlicz
/// norms, weighted norms and summability diagnostics for radial series.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tworlicz/errors.hpp"
#include "tworlicz/lattice.hpp"
#include "tworlicz/numerics.hpp"
#include "tworlicz/young.hpp"

namespace tworlicz {

/// Finitely supported f : Z^d -> C. Zero values are never stored.
class DiscreteFunction {
 public:
  using Map = std::map<Point, Complex>;

  explicit DiscreteFunction(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw DimensionError("bad dimension");
  }

  static DiscreteFunction delta(const Point& at, Complex value = 1.0) {
    DiscreteFunction f(at.dim());
    f.set(at, value);
    return f;
  }

  int dim() const { return dim_; }
  std::size_t support_size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }

  Complex operator()(const Point& s) const {
    auto it = entries_.find(s);
    return it == entries_.end() ? Complex{} : it->second;
  }

  void set(const Point& s, Complex v) {
    check(s);
    if (v == Complex{})
      entries_.erase(s);
    else
      entries_[s] = v;
  }

  void add(const Point& s, Complex v) {
    check(s);
    auto [it, inserted] = entries_.try_emplace(s, v);
    if (!inserted) {
      it->second += v;
      if (it->second == Complex{}) entries_.erase(it);
    }
  }

  double sup_norm() const {
    double m = 0;
    for (const auto& [_, v] : entries_) m = std::max(m, std::abs(v));
    return m;
  }

  double l1_norm() const {
    double s = 0;
    for (const auto& [_, v] : entries_) s += std::abs(v);
    return s;
  }

  DiscreteFunction scaled(Complex c) const {
    DiscreteFunction r(dim_);
    if (c == Complex{}) return r;
    for (const auto& [p, v] : entries_) r.entries_[p] = v * c;
    return r;
  }

  /// Pointwise product with a function of the point.
  template <class F>
  DiscreteFunction multiplied(F&& weight) const {
    DiscreteFunction r(dim_);
    for (const auto& [p, v] : entries_) r.set(p, v * weight(p));
    return r;
  }

  friend bool operator==(const DiscreteFunction& a, const DiscreteFunction& b) = default;

 private:
  void check(const Point& s) const {
    if (s.dim() != dim_) throw DimensionError("point dimension does not match function");
  }

  int dim_;
  Map entries_;
};

/// sup |f - g|.
inline double sup_distance(const DiscreteFunction& f, const DiscreteFunction& g) {
  double m = 0;
  for (const auto& [p, v] : f.entries()) m = std::max(m, std::abs(v - g(p)));
  for (const auto& [p, v] : g.entries())
    if (f.entries().find(p) == f.entries().end()) m = std::max(m, std::abs(v));
  return m;
}

template <class Rng>
DiscreteFunction random_function(Rng& rng, int dim, std::int64_t radius, std::size_t max_support,
                                 bool complex_values = true) {
  std::uniform_int_distribution<std::size_t> count(1, max_support);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  DiscreteFunction f(dim);
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = random_point(rng, dim, radius);
    const double re = val(rng);
    const double im = complex_values ? val(rng) : 0.0;
    f.set(p, {re, im});
  }
  return f;
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

/// sum_s Phi(|f(s)|).
inline double modular(const YoungFunction& phi, const DiscreteFunction& f) {
  double s = 0;
  for (const auto& [_, v] : f.entries()) s += phi(std::abs(v));
  return s;
}

namespace detail {

inline double modular_scaled(const YoungFunction& phi, const std::vector<double>& abs_values,
                             double scale) {
  double s = 0;
  for (double a : abs_values) s += phi(a * scale);
  return s;
}

inline std::vector<double> abs_values(const DiscreteFunction& f) {
  std::vector<double> a;
  a.reserve(f.support_size());
  for (const auto& [_, v] : f.entries()) a.push_back(std::abs(v));
  return a;
}

}  // namespace detail

/// Luxemburg norm inf{k > 0 : sum Phi(|f|/k) <= 1}.
///
/// The root of k -> modular(f/k) = 1 lies in [|f|_inf / a, |f|_1 / a] with
/// a = Phi^{-1}(1) (convexity and Phi(0) = 0); bisection runs on log k.
inline double luxemburg_norm(const YoungFunction& phi, const DiscreteFunction& f,
                             const Tolerances& tol = default_tolerances()) {
  if (f.is_zero()) return 0.0;
  const auto a = detail::abs_values(f);
  const double unit = bisect_increasing(phi, 1.0, 0.0, grow_upper_bracket(phi, 1.0, 1.0, 1e300),
                                        0.0, 1e-16);
  double lo = f.sup_norm() / unit;
  double hi = f.l1_norm() / unit;
  auto g = [&](double k) { return detail::modular_scaled(phi, a, 1.0 / k); };
  // Guard the analytic bracket against rounding in Phi^{-1}(1).
  for (int i = 0; i < 200 && g(lo) < 1.0; ++i) lo *= 0.5;
  for (int i = 0; i < 200 && g(hi) > 1.0; ++i) hi *= 2.0;
  if (!(g(lo) >= 1.0) || !(g(hi) <= 1.0))
    throw ToleranceError("Luxemburg bisection could not bracket the unit modular");
  // modular(f/k) decreases in k; bisect on u = log k.
  const double u = bisect_increasing([&](double uu) { return -g(std::exp(uu)); }, -1.0,
                                     std::log(lo), std::log(hi), 0.0, tol.norm_rel * 1e-2);
  return std::exp(u);
}

/// Orlicz norm via the Amemiya formula inf_{k>0} (1 + modular(k f)) / k,
/// golden-section search over log k around k = 1 / N_Phi(f).
inline double orlicz_norm(const YoungFunction& phi, const DiscreteFunction& f,
                          const Tolerances& tol = default_tolerances()) {
  if (f.is_zero()) return 0.0;
  const auto a = detail::abs_values(f);
  const double lux = luxemburg_norm(phi, f, tol);
  auto g = [&](double u) {
    const double k = std::exp(u);
    return (1.0 + detail::modular_scaled(phi, a, k)) / k;
  };
  const double center = -std::log(lux);
  double left = center - 1.0, right = center + 1.0;
  const double gc = g(center);
  for (int i = 0; i < 200 && !(g(left) > gc); ++i) left -= 1.0;
  for (int i = 0; i < 200 && !(g(right) > gc); ++i) right += 1.0;
  if (!(g(left) > gc) || !(g(right) > gc))
    throw ToleranceError("Amemiya minimization could not bracket the minimum");
  const auto m = golden_section_minimize(g, left, right, 1e-9);
  return std::min(m.value, gc);
}

enum class NormKind { Luxemburg, Orlicz };

inline const char* to_string(NormKind k) {
  return k == NormKind::Luxemburg ? "luxemburg" : "orlicz";
}

inline double norm(NormKind kind, const YoungFunction& phi, const DiscreteFunction& f,
                   const Tolerances& tol = default_tolerances()) {
  return kind == NormKind::Luxemburg ? luxemburg_norm(phi, f, tol) : orlicz_norm(phi, f, tol);
}

/// Norm of f * omega: the weighted space l^Phi_omega identified through
/// multiplication by the weight.
inline double weighted_norm(const YoungFunction& phi, const DiscreteFunction& f, const Weight& w,
                            NormKind kind, const Tolerances& tol = default_tolerances()) {
  return norm(kind, phi, f.multiplied([&w](const Point& p) { return w(p); }), tol);
}

// ---------------------------------------------------------------------------
// Radial series
// ---------------------------------------------------------------------------

/// Summand of a series over Z^d grouped by spheres: term(n) is already
/// multiplied by the sphere size.
struct RadialTerm {
  std::function<double(std::int64_t)> term;
  std::function<double(std::int64_t)> ratio;  // optional analytic term(n+1)/term(n)
  std::string description;
};

/// term(n) = sphere(d, n) * value(n).
inline RadialTerm radial_series(int d, std::function<double(std::int64_t)> value,
                                std::string description = "") {
  if (d < 1) throw DimensionError("dimension must be positive");
  RadialTerm rt;
  rt.term = [d, value = std::move(value)](std::int64_t n) {
    const double v = value(n);
    return v == 0.0 ? 0.0 : sphere_size(d, n) * v;
  };
  rt.description = std::move(description);
  return rt;
}

enum class Verdict { Converges, Diverges, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Converges: return "Converges";
    case Verdict::Diverges: return "Diverges";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct SeriesPolicy {
  std::int64_t n_max = 100000;
  double ratio_margin = 0.01;        // delta: certified ratio must be < 1 - delta
  double power_margin = 0.02;        // certified power-law exponent must be > 1 + margin
  double negligible = 1e-18;         // early stop once term < negligible * partial sum
  std::int64_t min_terms = 64;       // never stop before this many terms
};

struct SeriesVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double partial_sum = 0.0;
  std::int64_t terms_inspected = 0;
  std::optional<double> tail_bound;
  std::string certificate;  // "geometric", "power-law", "zero-tail" when Converges
  std::string witness;      // "non-vanishing", "harmonic" when Diverges
  double certified_rate = 0.0;  // r_bar (geometric) or p (power-law), c for harmonic
  std::string reason;
};

/// Sound-by-construction verdict on sum_n term(n).
///
/// Scans n = 0..N (N = n_max, or earlier once terms are negligible) and
/// inspects the window [N/2, N]:
///  - Converges/geometric: ratios r_n <= r_bar < 1 - delta and nonincreasing,
///    tail <= term(N) r_bar / (1 - r_bar);
///  - Converges/power-law: p = min local exponent -ln(r_n)/ln(1+1/n) > 1 +
///    margin, so n^p term(n) is nonincreasing, tail <= term(N) N / (p - 1);
///  - Diverges: positive nondecreasing terms, or n term(n) nondecreasing
///    (terms >= c/n with c = (N/2) term(N/2));
///  - otherwise Inconclusive.
/// Each certificate assumes the window behaviour persists.
inline SeriesVerdict summability(const RadialTerm& rt, const SeriesPolicy& policy = {}) {
  SeriesVerdict sv;
  std::vector<double> terms;
  terms.reserve(1024);
  double sum = 0.0;
  std::int64_t last = -1;
  for (std::int64_t n = 0; n <= policy.n_max; ++n) {
    const double t = rt.term(n);
    if (!(t >= 0.0) || std::isinf(t)) {
      sv.reason = "term(" + std::to_string(n) + ") is negative or not finite";
      sv.partial_sum = sum;
      sv.terms_inspected = n + 1;
      if (std::isinf(t)) {
        sv.verdict = Verdict::Diverges;
        sv.witness = "non-vanishing";
        sv.reason = "term(" + std::to_string(n) + ") is infinite";
      }
      return sv;
    }
    terms.push_back(t);
    sum += t;
    last = n;
    if (n >= policy.min_terms && t <= policy.negligible * sum) break;
  }
  sv.partial_sum = sum;
  sv.terms_inspected = last + 1;
  const std::int64_t end = last;
  const std::int64_t start = std::max<std::int64_t>(1, end / 2);

  bool all_zero = true;
  for (std::int64_t n = start; n <= end; ++n)
    if (terms[n] != 0.0) all_zero = false;
  if (all_zero) {
    sv.verdict = Verdict::Converges;
    sv.tail_bound = 0.0;
    sv.certificate = "zero-tail";
    sv.reason = "terms vanish on the final window";
    return sv;
  }
  bool all_positive = true;
  for (std::int64_t n = start; n <= end; ++n)
    if (!(terms[n] > 0.0)) all_positive = false;
  if (!all_positive) {
    sv.reason = "terms vanish only partially on the final window";
    return sv;
  }

  // Geometric certificate.
  {
    double rbar = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::int64_t n = start; n < end; ++n) {
      const double r = terms[n + 1] / terms[n];
      if (r > prev * (1 + 1e-12)) {
        ok = false;
        break;
      }
      prev = r;
      rbar = std::max(rbar, r);
    }
    if (ok && rbar < 1.0 - policy.ratio_margin) {
      sv.verdict = Verdict::Converges;
      sv.certificate = "geometric";
      sv.certified_rate = rbar;
      sv.tail_bound = terms[end] * rbar / (1.0 - rbar);
      return sv;
    }
  }
  // Power-law certificate.
  {
    double p = std::numeric_limits<double>::infinity();
    for (std::int64_t n = start; n < end; ++n) {
      const double nn = static_cast<double>(n);
      const double local = -std::log(terms[n + 1] / terms[n]) / std::log1p(1.0 / nn);
      p = std::min(p, local);
    }
    if (p > 1.0 + policy.power_margin) {
      const double pn = std::min(p, 64.0);
      sv.verdict = Verdict::Converges;
      sv.certificate = "power-law";
      sv.certified_rate = pn;
      sv.tail_bound = terms[end] * static_cast<double>(end) / (pn - 1.0);
      return sv;
    }
  }
  // Divergence witnesses.
  {
    bool nondecreasing = true;
    for (std::int64_t n = start; n < end; ++n)
      if (terms[n + 1] < terms[n]) nondecreasing = false;
    if (nondecreasing) {
      sv.verdict = Verdict::Diverges;
      sv.witness = "non-vanishing";
      sv.certified_rate = terms[start];
      sv.reason = "terms nondecreasing from " + detail::format_param(terms[start]);
      return sv;
    }
    bool harmonic = true;
    for (std::int64_t n = start; n < end; ++n)
      if (static_cast<double>(n + 1) * terms[n + 1] < static_cast<double>(n) * terms[n])
        harmonic = false;
    if (harmonic) {
      sv.verdict = Verdict::Diverges;
      sv.witness = "harmonic";
      sv.certified_rate = static_cast<double>(start) * terms[start];
      sv.reason = "n*term(n) nondecreasing; terms >= c/n with c=" +
                  detail::format_param(sv.certified_rate);
      return sv;
    }
  }
  sv.reason = "no certificate on window [" + std::to_string(start) + ", " + std::to_string(end) + "]";
  return sv;
}

struct MembershipVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::pair<double, SeriesVerdict>> runs;  // (alpha, verdict)
  bool value_monotone_tail = false;
  std::string note;
};

/// Tests f in S^Psi (alpha f summable for every alpha) for the radial
/// profile value(n) on Z^d by escalating alpha over {1, 2, 10, 100}.
inline MembershipVerdict s_psi_membership(const YoungFunction& psi, int d,
                                          std::function<double(std::int64_t)> value,
                                          const SeriesPolicy& policy = {}) {
  MembershipVerdict mv;
  mv.note =
      "alpha escalation over {1,2,10,100} stands in for 'every alpha'; Converges requires all "
      "runs to converge";
  // Hypothesis: value nonincreasing on the scanned tail.
  mv.value_monotone_tail = true;
  {
    const std::int64_t lo = std::min<std::int64_t>(policy.n_max / 2, 1000);
    double prev = value(lo);
    for (std::int64_t n = lo + 1; n <= lo + 1000; ++n) {
      const double v = value(n);
      if (v > prev * (1 + 1e-12)) {
        mv.value_monotone_tail = false;
        break;
      }
      prev = v;
    }
  }
  bool all_converge = true;
  bool any_diverge = false;
  for (double alpha : {1.0, 2.0, 10.0, 100.0}) {
    RadialTerm rt = radial_series(d, [&psi, &value, alpha](std::int64_t n) {
      const double v = value(n);
      return v == 0.0 ? 0.0 : psi(alpha * v);
    });
    auto sv = summability(rt, policy);
    if (sv.verdict != Verdict::Converges) all_converge = false;
    if (sv.verdict == Verdict::Diverges) any_diverge = true;
    mv.runs.emplace_back(alpha, std::move(sv));
    if (any_diverge) break;
  }
  if (any_diverge)
    mv.verdict = Verdict::Diverges;
  else if (all_converge && mv.value_monotone_tail)
    mv.verdict = Verdict::Converges;
  else
    mv.verdict = Verdict::Inconclusive;
  if (!mv.value_monotone_tail) mv.note += "; value is not monotone on the tail";
  return mv;
}

}  // namespace tworlicz
