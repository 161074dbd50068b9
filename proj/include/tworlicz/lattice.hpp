#pragma once

/// \file lattice.hpp
/// \brief The group Z^d with generating set {-1,0,1}^d: points, word length,
/// spheres, weights e^{rho(tau(s))} and 2-cocycles.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "tworlicz/errors.hpp"
#include "tworlicz/numerics.hpp"

namespace tworlicz {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 8;

/// A point of Z^d (d <= kMaxDim). Group law is addition, inverse negation.
class Point {
 public:
  Point() = default;

  explicit Point(int dim) : dim_(check_dim(dim)) {}

  Point(std::initializer_list<std::int64_t> coords)
      : dim_(check_dim(static_cast<int>(coords.size()))) {
    std::copy(coords.begin(), coords.end(), c_.begin());
  }

  static Point from_vector(const std::vector<std::int64_t>& v) {
    Point p(static_cast<int>(v.size()));
    std::copy(v.begin(), v.end(), p.c_.begin());
    return p;
  }

  int dim() const { return dim_; }
  std::int64_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  std::vector<std::int64_t> to_vector() const {
    return {c_.begin(), c_.begin() + dim_};
  }

  friend Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Point r(a.dim_);
    for (int i = 0; i < a.dim_; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Point r(a.dim_);
    for (int i = 0; i < a.dim_; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend Point operator-(const Point& a) {
    Point r(a.dim_);
    for (int i = 0; i < a.dim_; ++i) r.c_[i] = -a.c_[i];
    return r;
  }
  friend bool operator==(const Point& a, const Point& b) = default;
  friend auto operator<=>(const Point& a, const Point& b) = default;

  static void require_same_dim(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_)
      throw DimensionError("points of dimension " + std::to_string(a.dim_) + " and " +
                           std::to_string(b.dim_));
  }

 private:
  static int check_dim(int d) {
    if (d < 1 || d > kMaxDim)
      throw DimensionError("dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    return d;
  }

  int dim_ = 0;
  std::array<std::int64_t, kMaxDim> c_{};
};

inline Point origin(int dim) { return Point(dim); }

/// Word length with respect to {-1,0,1}^d: the l-infinity norm.
inline std::int64_t length(const Point& s) {
  std::int64_t m = 0;
  for (int i = 0; i < s.dim(); ++i) {
    const std::int64_t a = s[i] < 0 ? -s[i] : s[i];
    m = std::max(m, a);
  }
  return m;
}

struct BallSphere {
  std::uint64_t ball = 0;
  std::uint64_t sphere = 0;
};

namespace detail {

inline unsigned __int128 checked_pow(std::uint64_t base, int d) {
  unsigned __int128 r = 1;
  const unsigned __int128 limit = std::numeric_limits<std::uint64_t>::max();
  for (int i = 0; i < d; ++i) {
    r *= base;
    if (r > limit) throw OverflowError("(2n+1)^d exceeds 64 bits");
  }
  return r;
}

}  // namespace detail

/// |F^n| = (2n+1)^d and the sphere |F^n \ F^{n-1}|.
inline BallSphere ball_and_sphere(int d, std::int64_t n) {
  if (d < 1) throw DimensionError("dimension must be positive");
  if (n < 0) throw ParamError("radius must be nonnegative");
  if (static_cast<std::uint64_t>(n) > (std::numeric_limits<std::uint64_t>::max() - 1) / 2)
    throw OverflowError("radius too large");
  const auto big = detail::checked_pow(2 * static_cast<std::uint64_t>(n) + 1, d);
  BallSphere r;
  r.ball = static_cast<std::uint64_t>(big);
  r.sphere = n == 0 ? 1
                    : static_cast<std::uint64_t>(
                          big - detail::checked_pow(2 * static_cast<std::uint64_t>(n) - 1, d));
  return r;
}

/// Sphere size as a double, for radial series far beyond 64-bit range.
/// Uses (2n+1)^d - (2n-1)^d = 2 sum_{k odd} C(d,k) (2n)^{d-k}.
inline double sphere_size(int d, std::int64_t n) {
  if (n == 0) return 1.0;
  const double m = 2.0 * static_cast<double>(n);
  double total = 0.0;
  double binom = 1.0;  // C(d, k)
  for (int k = 0; k <= d; ++k) {
    if (k > 0) binom = binom * (d - k + 1) / k;
    if (k % 2 == 1) total += 2.0 * binom * std::pow(m, d - k);
  }
  return total;
}

/// Uniform random point of the ball of radius r.
template <class Rng>
Point random_point(Rng& rng, int d, std::int64_t r) {
  std::uniform_int_distribution<std::int64_t> coord(-r, r);
  Point p(d);
  for (int i = 0; i < d; ++i) p[i] = coord(rng);
  return p;
}

/// Calls f(p) for every point of the ball of radius r in lexicographic order.
template <class F>
void for_each_in_ball(int d, std::int64_t r, F&& f) {
  Point p(d);
  for (int i = 0; i < d; ++i) p[i] = -r;
  while (true) {
    f(static_cast<const Point&>(p));
    int i = d - 1;
    while (i >= 0 && p[i] == r) {
      p[i] = -r;
      --i;
    }
    if (i < 0) break;
    ++p[i];
  }
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

enum class WeightKind { Polynomial, SubExp, SubExp2, Exponential, Trivial, Custom };

inline const char* to_string(WeightKind k) {
  switch (k) {
    case WeightKind::Polynomial: return "poly";
    case WeightKind::SubExp: return "subexp";
    case WeightKind::SubExp2: return "subexp2";
    case WeightKind::Exponential: return "exp";
    case WeightKind::Trivial: return "trivial";
    case WeightKind::Custom: return "custom";
  }
  return "?";
}

/// omega(s) = e^{rho(tau(s))}. All arithmetic is kept in log space (rho);
/// callers exponentiate last.
class Weight {
 public:
  using Fn = std::function<double(double)>;

  struct Parts {
    WeightKind kind = WeightKind::Custom;
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    Fn rho;
    Fn rho_prime;   // optional for custom weights
    Fn rho_second;  // optional for custom weights
  };

  explicit Weight(Parts p) : impl_(std::make_shared<const Parts>(std::move(p))) {}

  static Weight custom(std::string name, Fn rho, Fn rho_prime = {}, Fn rho_second = {}) {
    Parts p;
    p.kind = WeightKind::Custom;
    p.name = std::move(name);
    p.rho = std::move(rho);
    p.rho_prime = std::move(rho_prime);
    p.rho_second = std::move(rho_second);
    return Weight(std::move(p));
  }

  WeightKind kind() const { return impl_->kind; }
  const std::string& name() const { return impl_->name; }
  const std::vector<std::pair<std::string, double>>& params() const { return impl_->params; }

  double param(const std::string& key) const {
    for (const auto& [k, v] : impl_->params)
      if (k == key) return v;
    throw ParamError("weight " + impl_->name + " has no parameter " + key);
  }

  double rho(double x) const { return impl_->rho(x); }
  bool has_analytic_derivatives() const {
    return static_cast<bool>(impl_->rho_prime) && static_cast<bool>(impl_->rho_second);
  }
  bool has_rho_prime() const { return static_cast<bool>(impl_->rho_prime); }

  double rho_prime(double x) const {
    if (impl_->rho_prime) return impl_->rho_prime(x);
    return central_difference(impl_->rho, x);
  }
  double rho_second(double x) const {
    if (impl_->rho_second) return impl_->rho_second(x);
    return central_second_difference(impl_->rho, x);
  }

  double log_value(const Point& s) const { return rho(static_cast<double>(length(s))); }
  double operator()(const Point& s) const { return std::exp(log_value(s)); }

 private:
  std::shared_ptr<const Parts> impl_;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParamError(what);
}

}  // namespace detail

/// omega_beta = (1+tau)^beta: rho = beta ln(1+x).
inline Weight polynomial_weight(double beta) {
  detail::require(beta > 0 && std::isfinite(beta), "poly weight needs beta > 0");
  Weight::Parts p;
  p.kind = WeightKind::Polynomial;
  p.name = "poly:" + detail::format_param(beta);
  p.params = {{"beta", beta}};
  p.rho = [beta](double x) { return beta * std::log1p(x); };
  p.rho_prime = [beta](double x) { return beta / (1 + x); };
  p.rho_second = [beta](double x) { return -beta / ((1 + x) * (1 + x)); };
  return Weight(std::move(p));
}

/// sigma_{alpha,C} = e^{C tau^alpha}.
inline Weight subexp_weight(double alpha, double c) {
  detail::require(alpha > 0 && alpha < 1, "subexp weight needs 0 < alpha < 1");
  detail::require(c > 0 && std::isfinite(c), "subexp weight needs C > 0");
  Weight::Parts p;
  p.kind = WeightKind::SubExp;
  p.name = "subexp:" + detail::format_param(alpha) + "," + detail::format_param(c);
  p.params = {{"alpha", alpha}, {"C", c}};
  p.rho = [alpha, c](double x) { return c * std::pow(x, alpha); };
  p.rho_prime = [alpha, c](double x) { return c * alpha * std::pow(x, alpha - 1); };
  p.rho_second = [alpha, c](double x) {
    return c * alpha * (alpha - 1) * std::pow(x, alpha - 2);
  };
  return Weight(std::move(p));
}

/// nu_{gamma,C} = e^{C tau / ln(1+tau)^gamma}, with rho(0) = 0.
inline Weight subexp2_weight(double gamma, double c) {
  detail::require(gamma > 0 && std::isfinite(gamma), "subexp2 weight needs gamma > 0");
  detail::require(c > 0 && std::isfinite(c), "subexp2 weight needs C > 0");
  Weight::Parts p;
  p.kind = WeightKind::SubExp2;
  p.name = "subexp2:" + detail::format_param(gamma) + "," + detail::format_param(c);
  p.params = {{"gamma", gamma}, {"C", c}};
  p.rho = [gamma, c](double x) {
    if (x <= 0) return 0.0;
    return c * x / std::pow(std::log1p(x), gamma);
  };
  p.rho_prime = [gamma, c](double x) {
    const double l = std::log1p(x);
    return c * (std::pow(l, -gamma) - gamma * x * std::pow(l, -gamma - 1) / (1 + x));
  };
  p.rho_second = [gamma, c](double x) {
    const double l = std::log1p(x);
    const double u = 1 + x;
    return c * (-2 * gamma * std::pow(l, -gamma - 1) / u +
                gamma * (gamma + 1) * x * std::pow(l, -gamma - 2) / (u * u) +
                gamma * x * std::pow(l, -gamma - 1) / (u * u));
  };
  return Weight(std::move(p));
}

/// e^{C tau}: rho linear.
inline Weight exponential_weight(double c) {
  detail::require(c > 0 && std::isfinite(c), "exp weight needs C > 0");
  Weight::Parts p;
  p.kind = WeightKind::Exponential;
  p.name = "exp:" + detail::format_param(c);
  p.params = {{"C", c}};
  p.rho = [c](double x) { return c * x; };
  p.rho_prime = [c](double) { return c; };
  p.rho_second = [](double) { return 0.0; };
  return Weight(std::move(p));
}

/// omega = 1.
inline Weight trivial_weight() {
  Weight::Parts p;
  p.kind = WeightKind::Trivial;
  p.name = "trivial";
  p.rho = [](double) { return 0.0; };
  p.rho_prime = [](double) { return 0.0; };
  p.rho_second = [](double) { return 0.0; };
  return Weight(std::move(p));
}

/// make_weight("poly", {beta}), ("subexp", {alpha, C}), ("subexp2", {gamma, C}),
/// ("exp", {C}), ("trivial", {}).
inline Weight make_weight(const std::string& kind, const std::vector<double>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw ParamError("weight kind " + kind + " takes " + std::to_string(n) + " parameters");
  };
  if (kind == "poly") {
    need(1);
    return polynomial_weight(params[0]);
  }
  if (kind == "subexp") {
    need(2);
    return subexp_weight(params[0], params[1]);
  }
  if (kind == "subexp2") {
    need(2);
    return subexp2_weight(params[0], params[1]);
  }
  if (kind == "exp") {
    need(1);
    return exponential_weight(params[0]);
  }
  if (kind == "trivial") {
    need(0);
    return trivial_weight();
  }
  throw ParamError("unknown weight kind '" + kind + "'");
}

/// Parses "poly:2", "subexp:0.5,1", "subexp2:1,1", "exp:1", "trivial".
inline Weight weight_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos)
    for (const auto& f : detail::split_top(spec.substr(colon + 1), ','))
      params.push_back(detail::parse_double(f, "weight parameter"));
  return make_weight(kind, params);
}

struct WeightCheck {
  bool ok = true;
  std::string failure;
};

/// rho(0)=0, rho >= 0, increasing and subadditive on integers 0..n_max.
inline WeightCheck check_weight(const Weight& w, int n_max = 200, double tol = 1e-12) {
  WeightCheck r;
  auto fail = [&r](std::string m) {
    r.ok = false;
    r.failure = std::move(m);
    return r;
  };
  if (std::abs(w.rho(0.0)) > tol) return fail("rho(0) != 0");
  std::vector<double> v(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = 0; n <= 2 * n_max; ++n) v[static_cast<std::size_t>(n)] = w.rho(n);
  for (int n = 0; n < 2 * n_max; ++n) {
    if (v[n] < -tol) return fail("rho negative at " + std::to_string(n));
    if (v[n + 1] < v[n] - tol) return fail("rho decreasing at " + std::to_string(n));
  }
  for (int m = 0; m <= n_max; ++m)
    for (int n = 0; n <= n_max; ++n)
      if (v[m + n] > v[m] + v[n] + tol * std::max(1.0, v[m + n]))
        return fail("rho not subadditive at (" + std::to_string(m) + "," +
                    std::to_string(n) + ")");
  return r;
}

// ---------------------------------------------------------------------------
// 2-cocycles
// ---------------------------------------------------------------------------

class Cocycle;

namespace cocycle_node {

struct Trivial {};
struct Coboundary {
  Weight weight;
};
struct Heisenberg {
  double theta;
};
struct Product {
  std::vector<Cocycle> factors;
};
struct Modulus {
  std::shared_ptr<const Cocycle> inner;
};
struct Torus {
  std::shared_ptr<const Cocycle> inner;
};
struct Custom {
  std::string name;
  std::function<Complex(const Point&, const Point&)> fn;
};

}  // namespace cocycle_node

/// A normalized 2-cocycle Z^d x Z^d -> C\{0}, stored as an expression tree
/// of built-ins so it can be serialized and decomposed.
class Cocycle {
 public:
  using Node = std::variant<cocycle_node::Trivial, cocycle_node::Coboundary,
                            cocycle_node::Heisenberg, cocycle_node::Product,
                            cocycle_node::Modulus, cocycle_node::Torus, cocycle_node::Custom>;

  /// dim == 0 means the cocycle is defined for every dimension.
  Cocycle(Node node, int dim) : node_(std::make_shared<const Node>(std::move(node))), dim_(dim) {}

  const Node& node() const { return *node_; }
  int dim() const { return dim_; }

  Complex operator()(const Point& s, const Point& t) const {
    Point::require_same_dim(s, t);
    if (dim_ != 0 && s.dim() != dim_)
      throw DimensionError("cocycle " + name() + " is defined on Z^" + std::to_string(dim_));
    return std::visit([&](const auto& n) { return eval(n, s, t); }, *node_);
  }

  /// |Omega| as a cocycle.
  Cocycle modulus_part() const {
    return Cocycle(cocycle_node::Modulus{std::make_shared<const Cocycle>(*this)}, dim_);
  }
  /// Omega / |Omega| as a cocycle.
  Cocycle torus_part() const {
    return Cocycle(cocycle_node::Torus{std::make_shared<const Cocycle>(*this)}, dim_);
  }

  /// sup |Omega| when known from the construction.
  std::optional<double> bound() const {
    return std::visit([](const auto& n) { return bound_of(n); }, *node_);
  }

  std::string name() const {
    return std::visit([](const auto& n) { return name_of(n); }, *node_);
  }

 private:
  static Complex eval(const cocycle_node::Trivial&, const Point&, const Point&) { return 1.0; }

  static Complex eval(const cocycle_node::Coboundary& n, const Point& s, const Point& t) {
    const double e = n.weight.log_value(s + t) - n.weight.log_value(s) - n.weight.log_value(t);
    return std::exp(e);
  }

  static Complex eval(const cocycle_node::Heisenberg& n, const Point& s, const Point& t) {
    // exp(2 pi i theta a e) with the phase reduced mod 1 before the
    // trigonometric call; the product theta * m is split exactly by fma.
    const double m = static_cast<double>(s[0] * t[1]);
    const double p = n.theta * m;
    const double err = std::fma(n.theta, m, -p);
    double frac = (p - std::floor(p)) + err;
    frac -= std::floor(frac);
    const double angle = 2.0 * std::numbers::pi * frac;
    return {std::cos(angle), std::sin(angle)};
  }

  static Complex eval(const cocycle_node::Product& n, const Point& s, const Point& t) {
    Complex v = 1.0;
    for (const auto& f : n.factors) v *= f(s, t);
    return v;
  }

  static Complex eval(const cocycle_node::Modulus& n, const Point& s, const Point& t) {
    return std::abs((*n.inner)(s, t));
  }

  static Complex eval(const cocycle_node::Torus& n, const Point& s, const Point& t) {
    const Complex v = (*n.inner)(s, t);
    return v / std::abs(v);
  }

  static Complex eval(const cocycle_node::Custom& n, const Point& s, const Point& t) {
    return n.fn(s, t);
  }

  static std::optional<double> bound_of(const cocycle_node::Trivial&) { return 1.0; }
  static std::optional<double> bound_of(const cocycle_node::Coboundary& n) {
    // Built-in weights have subadditive rho, so omega(s+t) <= omega(s) omega(t).
    if (n.weight.kind() == WeightKind::Custom) return std::nullopt;
    return 1.0;
  }
  static std::optional<double> bound_of(const cocycle_node::Heisenberg&) { return 1.0; }
  static std::optional<double> bound_of(const cocycle_node::Product& n) {
    double b = 1.0;
    for (const auto& f : n.factors) {
      auto fb = f.bound();
      if (!fb) return std::nullopt;
      b *= *fb;
    }
    return b;
  }
  static std::optional<double> bound_of(const cocycle_node::Modulus& n) { return n.inner->bound(); }
  static std::optional<double> bound_of(const cocycle_node::Torus&) { return 1.0; }
  static std::optional<double> bound_of(const cocycle_node::Custom&) { return std::nullopt; }

  static std::string name_of(const cocycle_node::Trivial&) { return "trivial"; }
  static std::string name_of(const cocycle_node::Coboundary& n) {
    return "coboundary(" + n.weight.name() + ")";
  }
  static std::string name_of(const cocycle_node::Heisenberg& n) {
    return "heisenberg(" + detail::format_param(n.theta) + ")";
  }
  static std::string name_of(const cocycle_node::Product& n) {
    std::string s = "product(";
    for (std::size_t i = 0; i < n.factors.size(); ++i) s += (i ? "," : "") + n.factors[i].name();
    return s + ")";
  }
  static std::string name_of(const cocycle_node::Modulus& n) { return "|" + n.inner->name() + "|"; }
  static std::string name_of(const cocycle_node::Torus& n) { return "torus(" + n.inner->name() + ")"; }
  static std::string name_of(const cocycle_node::Custom& n) { return n.name; }

  std::shared_ptr<const Node> node_;
  int dim_ = 0;
};

inline Cocycle trivial_cocycle() { return Cocycle(cocycle_node::Trivial{}, 0); }

/// omega(s+t) / (omega(s) omega(t)), evaluated in log space.
inline Cocycle coboundary(const Weight& w) { return Cocycle(cocycle_node::Coboundary{w}, 0); }

/// exp(2 pi i theta a e) for s = (a, b), t = (c, e); defined on Z^2 only.
inline Cocycle heisenberg_cocycle(double theta, int dim = 2) {
  if (dim != 2) throw DimensionError("heisenberg cocycle needs d = 2");
  if (!std::isfinite(theta)) throw ParamError("theta must be finite");
  return Cocycle(cocycle_node::Heisenberg{theta}, 2);
}

inline Cocycle cocycle_product(std::vector<Cocycle> factors) {
  int dim = 0;
  for (const auto& f : factors) {
    if (f.dim() == 0) continue;
    if (dim != 0 && dim != f.dim()) throw DimensionError("cocycle factors of different dimension");
    dim = f.dim();
  }
  return Cocycle(cocycle_node::Product{std::move(factors)}, dim);
}

inline Cocycle cocycle_product(const Cocycle& a, const Cocycle& b) {
  return cocycle_product(std::vector<Cocycle>{a, b});
}

struct CocycleParts {
  Cocycle modulus;
  Cocycle torus;
};

/// Omega = |Omega| Omega_T.
inline CocycleParts decompose(const Cocycle& c) { return {c.modulus_part(), c.torus_part()}; }

/// max over triples of |Omega(r,s)Omega(r+s,t) - Omega(s,t)Omega(r,s+t)|.
inline double cocycle_identity_residual(const Cocycle& c,
                                        const std::vector<std::array<Point, 3>>& triples) {
  double worst = 0.0;
  for (const auto& [r, s, t] : triples) {
    const Complex lhs = c(r, s) * c(r + s, t);
    const Complex rhs = c(s, t) * c(r, s + t);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

/// max over points of |Omega(s,0) - 1| and |Omega(0,s) - 1|.
inline double normalization_residual(const Cocycle& c, const std::vector<Point>& points) {
  double worst = 0.0;
  for (const auto& s : points) {
    const Point e = origin(s.dim());
    worst = std::max({worst, std::abs(c(s, e) - 1.0), std::abs(c(e, s) - 1.0)});
  }
  return worst;
}

template <class Rng>
std::vector<std::array<Point, 3>> random_triples(Rng& rng, int d, std::int64_t radius,
                                                 std::size_t count) {
  std::vector<std::array<Point, 3>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back({random_point(rng, d, radius), random_point(rng, d, radius),
                   random_point(rng, d, radius)});
  return out;
}

}  // namespace tworlicz
