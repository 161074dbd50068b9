// Multiplying by a weight turns ordinary convolution into the coboundary-twisted one.

#include <iostream>
#include <random>

#include "tworlicz/tworlicz.hpp"

using namespace tworlicz;

int main() {
  const Weight w = subexp_weight(0.5, 1.0);
  const Cocycle omega = coboundary(w);
  auto times_w = [&w](const DiscreteFunction& f) { return f.multiplied([&w](const Point& p) { return w(p); }); };

  std::mt19937_64 rng(7);
  const auto f = random_function(rng, 1, 15, 8), g = random_function(rng, 1, 15, 8);

  const auto lhs = times_w(convolve(f, g));
  const auto rhs = twisted_convolve(omega, times_w(f), times_w(g));
  std::cout << "weight " << w.name() << ", |supp f| = " << f.support_size() << ", |supp g| = " << g.support_size()
            << "\n";
  std::cout << "(f*g)w vs (fw) twisted (gw): sup distance " << sup_distance(lhs, rhs.result) << " over "
            << rhs.result.support_size() << " points, " << rhs.flops << " products\n";

  const auto phi = power_young(2.0);
  std::cout << "N(f) = " << luxemburg_norm(phi, f) << ", ||f|| = " << orlicz_norm(phi, f)
            << ", N(f twisted g) / (N(f) N(g)) = " << submultiplicativity_ratio(phi, omega, f, g) << "\n";
}
