#pragma once

#include <functional>
#include <span>

namespace nlfv::quad {

using Integrand = std::function<double(double)>;

/// Composite Simpson rule on [lo, hi]; `panels` is rounded up to an even count.
double simpson(const Integrand& g, double lo, double hi, int panels);

/// Composite Gauss-Legendre rule with `order` nodes per panel (order in 1..16).
double gauss_legendre(const Integrand& g, double lo, double hi, int panels, int order = 8);

/// Nodes and weights of the `order`-point Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::span<const double> nodes;
  std::span<const double> weights;
};
Rule legendre_rule(int order);

/// ∫|g| over [lo, hi]. Sign changes of g are located on a uniform scan with
/// `panels` cells and refined by bisection, then each sign-definite piece is
/// integrated with composite Gauss-Legendre. Kinks of |g| never sit inside a
/// panel, so smooth g gives near machine-precision results.
double l1_norm(const Integrand& g, double lo, double hi, int panels);

/// sup |g| over [lo, hi]: dense uniform sampling with `samples` points followed
/// by a golden-section refinement around the best sample.
double sup_norm(const Integrand& g, double lo, double hi, int samples);

}  // namespace nlfv::quad
