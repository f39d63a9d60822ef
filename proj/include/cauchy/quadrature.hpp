#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cauchy/distributions.hpp"
#include "cauchy/halfplane.hpp"

namespace cauchy {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  std::size_t max_subdivisions = 2000;
  // Points (in the variable of the law) where the integrand has a kink or
  // an integrable singularity; panels are split there.
  std::vector<double> split_points;
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

// Abscissa handed to an integrand, with its distances to the two ends of the
// whole integration interval. Each distance keeps full relative precision
// close to its own end, so integrands can resolve endpoint behaviour that
// `x` alone would round away.
struct QuadratureNode {
  double x;
  double from_lo;
  double to_hi;
};

using NodeIntegrand = std::function<Complex(const QuadratureNode&)>;

// Adaptive integration over [lo, hi]. Each panel uses a tanh-sinh rule
// refined by step halving; panels that do not settle are bisected. Throws
// NumericalError with the achieved error estimate if `abs_tol` cannot be
// met within `max_panels` panels.
QuadratureResult integrate(const NodeIntegrand& f, double lo, double hi,
                           std::span<const double> breakpoints, double abs_tol,
                           std::size_t max_panels);

using RealToComplex = std::function<Complex(double)>;
using Density = std::function<double(double)>;

// E[f(X)] for an analytic law. Real-line laws use x = loc + scale tan(u) per
// Cauchy component, which turns each component into a uniform measure on
// (-pi/2, pi/2); the circular law is integrated over [0, 2pi] directly.
Complex expectation(const RealToComplex& f, const DistSpec& spec, const QuadratureConfig& cfg = {});

// E[f(X)] for an arbitrary density on the real line, using the same tangent
// map centred at `center` with spread `scale` and the Jacobian folded in.
Complex expectation_density(const RealToComplex& f, const Density& density, double center,
                            double scale, const QuadratureConfig& cfg = {});

}  // namespace cauchy
