#pragma once

/// \file twist.hpp
/// \brief Twisted convolution (f *_Omega g)(t) = sum_s f(s) g(t-s) Omega(s, t-s)
/// on finitely supported functions, and empirical checks of the algebra
/// inequalities.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>

#include "tworlicz/lattice.hpp"
#include "tworlicz/orlicz.hpp"

namespace tworlicz {

struct ConvolutionReport {
  DiscreteFunction result;
  std::uint64_t flops = 0;  // number of multiply-accumulate terms
  std::string cocycle_id;
};

/// Direct double loop over supp f x supp g.
inline ConvolutionReport twisted_convolve(const Cocycle& omega, const DiscreteFunction& f,
                                          const DiscreteFunction& g) {
  if (f.dim() != g.dim()) throw DimensionError("convolution of functions on different lattices");
  if (omega.dim() != 0 && omega.dim() != f.dim())
    throw DimensionError("cocycle " + omega.name() + " is not defined on Z^" +
                         std::to_string(f.dim()));
  ConvolutionReport rep{DiscreteFunction(f.dim()), 0, omega.name()};
  for (const auto& [s, fs] : f.entries()) {
    for (const auto& [r, gr] : g.entries()) {
      rep.result.add(s + r, fs * gr * omega(s, r));
      ++rep.flops;
    }
  }
  return rep;
}

/// Ordinary convolution (Omega = 1).
inline DiscreteFunction convolve(const DiscreteFunction& f, const DiscreteFunction& g) {
  return twisted_convolve(trivial_cocycle(), f, g).result;
}

/// |(f*g)*h - f*(g*h)|_inf / (1 + |f*(g*h)|_inf).
inline double associativity_residual(const Cocycle& omega, const DiscreteFunction& f,
                                     const DiscreteFunction& g, const DiscreteFunction& h) {
  const auto left = twisted_convolve(omega, twisted_convolve(omega, f, g).result, h).result;
  const auto right = twisted_convolve(omega, f, twisted_convolve(omega, g, h).result).result;
  return sup_distance(left, right) / (1.0 + right.sup_norm());
}

/// Radial profile n -> value.
using RadialProfile = std::function<double(std::int64_t)>;

struct BoundViolation {
  double max_violation = -std::numeric_limits<double>::infinity();
  Point s, t;  // argmax
  std::uint64_t pairs_checked = 0;
};

/// max over s, t in the ball of radius N of |Omega(s,t)| - u(tau(s)) - v(tau(t)).
inline BoundViolation decomposition_bound_check(const Cocycle& omega, const RadialProfile& u,
                                                const RadialProfile& v, int d, std::int64_t radius) {
  BoundViolation b;
  std::vector<double> uu(static_cast<std::size_t>(radius + 1)), vv(uu.size());
  for (std::int64_t n = 0; n <= radius; ++n) {
    uu[n] = u(n);
    vv[n] = v(n);
  }
  for_each_in_ball(d, radius, [&](const Point& s) {
    const double us = uu[length(s)];
    for_each_in_ball(d, radius, [&](const Point& t) {
      const double viol = std::abs(omega(s, t)) - us - vv[length(t)];
      ++b.pairs_checked;
      if (viol > b.max_violation) {
        b.max_violation = viol;
        b.s = s;
        b.t = t;
      }
    });
  });
  return b;
}

/// Random finitely supported functions for the submultiplicativity probe.
struct FunctionSampler {
  int dim = 1;
  std::int64_t support_radius = 20;
  std::size_t max_support = 20;
  bool complex_values = true;

  template <class Rng>
  DiscreteFunction operator()(Rng& rng) const {
    return random_function(rng, dim, support_radius, max_support, complex_values);
  }
};

struct ProbeResult {
  double max_ratio = 0.0;
  DiscreteFunction argmax_f{1};
  DiscreteFunction argmax_g{1};
  std::size_t trials = 0;
};

/// ratio(f, g) = N_Phi(f * g) / (N_Phi(f) N_Phi(g)).
inline double submultiplicativity_ratio(const YoungFunction& phi, const Cocycle& omega,
                                        const DiscreteFunction& f, const DiscreteFunction& g,
                                        NormKind kind = NormKind::Luxemburg) {
  const double nf = norm(kind, phi, f), ng = norm(kind, phi, g);
  if (nf == 0.0 || ng == 0.0) return 0.0;
  return norm(kind, phi, twisted_convolve(omega, f, g).result) / (nf * ng);
}

/// Largest empirical algebra constant over `trials` random pairs.
inline ProbeResult submultiplicativity_probe(const YoungFunction& phi, const Cocycle& omega,
                                             const FunctionSampler& sampler, std::size_t trials,
                                             std::uint64_t seed,
                                             NormKind kind = NormKind::Luxemburg) {
  if (trials < 1) throw ParamError("trials must be >= 1");
  std::mt19937_64 rng(seed);
  ProbeResult best{0.0, DiscreteFunction(sampler.dim), DiscreteFunction(sampler.dim), trials};
  for (std::size_t i = 0; i < trials; ++i) {
    auto f = sampler(rng);
    auto g = sampler(rng);
    const double r = submultiplicativity_ratio(phi, omega, f, g, kind);
    if (r > best.max_ratio) {
      best.max_ratio = r;
      best.argmax_f = std::move(f);
      best.argmax_g = std::move(g);
    }
  }
  return best;
}

}  // namespace tworlicz
