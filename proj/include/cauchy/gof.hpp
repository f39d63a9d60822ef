#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cauchy/distributions.hpp"
#include "cauchy/estimation.hpp"
#include "cauchy/transforms.hpp"

namespace cauchy {

// Outcome of a parametric-bootstrap goodness-of-fit test against the Cauchy
// family. p_value = (1 + #{T*_b >= T}) / (B + 1).
struct TestReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t replications = 0;
  std::vector<Complex> grid_used;
  Complex null_params;
};

// Grid for the Mobius test in standardized coordinates: each z maps to
// mu + sigma z around the fitted gamma = mu + i sigma, so every z needs Im > 0.
std::vector<Complex> default_mobius_grid();

// low_exponent_grid(). Above a = 1/2 the per-exponent estimates of a Cauchy
// sample have infinite variance and drown the dispersion statistic.
std::vector<MellinExponent> default_mellin_test_grid();

// max_j |F_X(mu + sigma z_j) - gamma| / sigma at the fitted gamma.
double mobius_test_statistic(const SampleSet& s, const HalfPlaneParam& fitted,
                             std::span<const Complex> standardized_grid);

// Largest pairwise distance among the per-exponent Mellin estimates.
double mellin_test_statistic(const SampleSet& s, std::span<const MellinExponent> grid);

// Needs n >= 10, a grid of at least 3 points and B >= 99. Bootstrap
// replica b draws from C(gamma_hat) on random substream (seed, b).
TestReport cauchy_test_mobius(const SampleSet& s, std::span<const Complex> standardized_grid,
                              std::size_t B, std::uint64_t seed);
TestReport cauchy_test_mellin(const SampleSet& s, std::span<const MellinExponent> grid,
                              std::size_t B, std::uint64_t seed);

struct LogMomentDiscrepancy {
  int order;
  double discrepancy;
};

// |E[(log X)^n] - E[log X]^n| for n = 1..n_max with the principal logarithm.
std::vector<LogMomentDiscrepancy> logmoment_diagnostic(const SampleSet& s, int n_max);

}  // namespace cauchy
