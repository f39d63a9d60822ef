#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cauchy/errors.hpp"
#include "cauchy/estimation.hpp"
#include "support/oracles.hpp"

using namespace cauchy;
using std::numbers::pi;

namespace {

const HalfPlaneParam kI(Complex(0, 1));

double loglik(const SampleSet& s, Complex g) { return log_likelihood(s, CauchyDist{HalfPlaneParam(g)}); }

// Central finite differences of the per-observation log-likelihood.
double gradient_norm(const SampleSet& s, Complex g, double h = 1e-6) {
  const double d_re = (loglik(s, g + h) - loglik(s, g - h)) / (2 * h);
  const double d_im = (loglik(s, g + Complex(0, h)) - loglik(s, g - Complex(0, h))) / (2 * h);
  return std::hypot(d_re, d_im);
}

}  // namespace

TEST_CASE("fixed-point configuration is validated") {
  FixedPointConfig cfg;
  cfg.tol = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.damping = 1.5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.damping = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("two-point MLE") {
  const SampleSet s({-1.0, 1.0});
  const PointReport r = mle_fixed_point(s);
  CHECK(r.converged);
  CHECK(std::abs(r.estimate - Complex(0, 1)) <= 1e-12);
  CHECK(r.residual <= 1e-12);
  CHECK(r.iterations <= 50);
  // Every point of the unit semicircle maximizes this likelihood, so compare
  // the maximal value rather than its location.
  const auto grid = oracle::likelihood_grid_search({-1.0, 1.0}, -2, 2, 0.1, 3);
  CHECK(std::abs(*r.loglik - grid.loglik) <= 1e-12);
  CHECK(std::abs(std::abs(Complex(grid.loc, grid.scale)) - 1) <= 1e-3);
}

TEST_CASE("MLE agrees with a brute-force likelihood search on small samples") {
  std::mt19937_64 gen(20);
  std::cauchy_distribution<double> c(0.5, 2);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<double> xs(30);
    for (auto& x : xs) x = c(gen);
    const PointReport r = mle_fixed_point(SampleSet(xs));
    REQUIRE(r.converged);
    const auto grid = oracle::likelihood_grid_search(xs, r.estimate.real() - 3, r.estimate.real() + 3,
                                                     1e-3, r.estimate.imag() + 3, 60, 8);
    CHECK(std::abs(Complex(grid.loc, grid.scale) - r.estimate) <= 1e-4);
    CHECK(*r.loglik >= oracle::cauchy_loglik(xs, grid.loc, grid.scale) - 1e-12);
  }
}

TEST_CASE("degenerate samples are rejected") {
  CHECK_THROWS_AS(mle_fixed_point(SampleSet({3.0, 3.0})), DegenerateSampleError);
  CHECK_THROWS_AS(mle_fixed_point(SampleSet({3.0})), DegenerateSampleError);
}

TEST_CASE("iteration cap gives an honest non-convergence report") {
  const SampleSet s = sample(CauchyDist{HalfPlaneParam(3, 2)}, 200, 1);
  FixedPointConfig cfg;
  cfg.max_iter = 1;
  const PointReport r = mle_fixed_point(s, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.residual > cfg.tol);
}

TEST_CASE("robust initial estimate") {
  const HalfPlaneParam g = robust_initial_estimate(SampleSet({1.0, 2.0, 3.0, 4.0}));
  CHECK(g.location() == 2.5);
  CHECK(g.scale() == 1.0);
  // Tied quartiles fall back to the median absolute deviation, then the range.
  CHECK(robust_initial_estimate(SampleSet({1.0, 1.0, 1.0, 1.0, 1.0, 5.0})).scale() > 0);
  CHECK(robust_initial_estimate(SampleSet({2.0, 2.0})).scale() == 1.0);
}

TEST_CASE("MLE from the initial estimate never lowers the likelihood") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SampleSet s = sample(CauchyDist{HalfPlaneParam(-1, 0.5)}, 100, seed);
    const PointReport r = mle_fixed_point(s);
    CHECK(*r.loglik >= loglik(s, robust_initial_estimate(s).value()));
    CHECK(r.estimate.imag() > 0);
  }
}

TEST_CASE("MLE consistency and first-order optimality on a large sample") {
  const SampleSet s = sample(CauchyDist{kI}, 100000, 42);
  const PointReport r = mle_fixed_point(s);
  CHECK(r.converged);
  CHECK(std::abs(r.estimate - Complex(0, 1)) <= 0.02);
  CHECK(gradient_norm(s, r.estimate) <= 1e-4);
}

TEST_CASE("property: fixed point and vanishing gradient agree") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SampleSet s = sample(CauchyDist{HalfPlaneParam(seed * 0.3 - 5, 0.2 + seed * 0.1)}, 50 + seed * 20, seed);
    const PointReport r = mle_fixed_point(s);
    REQUIRE(r.converged);
    CHECK(std::abs(mobius_stat(s, HalfPlaneParam(r.estimate)) - r.estimate) <=
          1e-12 * std::max(1.0, std::abs(r.estimate)));
    CHECK(gradient_norm(s, r.estimate) <= 1e-4);
  }
}

TEST_CASE("property: the MLE is affine equivariant") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> c(0.01, 100), d(-100, 100);
  for (int rep = 0; rep < 100; ++rep) {
    const SampleSet s = sample(CauchyDist{kI}, 20 + rep, rep);
    const double cv = c(gen), dv = d(gen);
    std::vector<double> moved;
    for (double x : s.values()) moved.push_back(cv * x + dv);
    const PointReport base = mle_fixed_point(s);
    const PointReport shifted = mle_fixed_point(SampleSet(moved));
    REQUIRE(base.converged);
    REQUIRE(shifted.converged);
    const Complex expect = cv * base.estimate + dv;
    CHECK(std::abs(shifted.estimate - expect) <= 1e-8 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("property: plain fixed-point iteration rarely lowers the likelihood") {
  std::size_t steps = 0, increases = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SampleSet s = sample(CauchyDist{HalfPlaneParam(1, 2)}, 200, seed);
    Complex g = robust_initial_estimate(s).value();
    double ll = loglik(s, g);
    for (int it = 0; it < 200; ++it) {
      const Complex next = mobius_stat(s, HalfPlaneParam(g));
      if (std::abs(next - g) <= 1e-13 * std::abs(g)) break;
      const double next_ll = loglik(s, next);
      ++steps;
      if (next_ll >= ll - 1e-14 * std::abs(ll)) ++increases;
      g = next;
      ll = next_ll;
    }
  }
  MESSAGE("non-decreasing steps: " << increases << " of " << steps);
  CHECK(increases >= 0.99 * steps);
}

TEST_CASE("single-exponent Mellin estimates") {
  const SampleSet two({-1.0, 1.0});
  const double a = 0.01;
  const MellinEstimate e = mellin_estimate(two, MellinExponent(a));
  // ((1 + e^{i a pi}) / 2)^{1/a} = i cos(a pi / 2)^{1/a}, which tends to i as a -> 0.
  CHECK(std::abs(e.value - Complex(0, std::pow(std::cos(a * pi / 2), 1 / a))) <= 1e-12);
  CHECK(e.in_upper_half_plane);
  CHECK(std::abs(mellin_estimate(two, MellinExponent(1e-4)).value - Complex(0, 1)) <= 1e-3);

  const MellinEstimate analytic = mellin_estimate(CauchyDist{kI}, MellinExponent(0.5));
  CHECK(std::abs(analytic.value - Complex(0, 1)) <= 1e-9);

  const MellinEstimate positive = mellin_estimate(SampleSet({1.0, 2.0, 5.0}), MellinExponent(0.5));
  CHECK(positive.value.imag() == 0.0);
  CHECK_FALSE(positive.in_upper_half_plane);

  CHECK_THROWS_AS(mellin_estimate_from_moment(0.0, MellinExponent(0.5)), NumericalError);
  CHECK_THROWS_AS(mellin_estimate(two, MellinExponent(0.0)), DomainError);
}

TEST_CASE("Mellin consensus") {
  const HalfPlaneParam g(-1.5, 0.7);
  const auto grid = default_exponent_grid();
  const PointReport analytic = mellin_consensus(CauchyDist{g}, grid);
  CHECK(std::abs(analytic.estimate - g.value()) <= 1e-8);
  CHECK(*analytic.dispersion <= 1e-8);

  // Exponents of at least 1/2 give infinite-variance estimates, so the Monte
  // Carlo check uses the low grid.
  const SampleSet s = sample(CauchyDist{HalfPlaneParam(1, 2)}, 100000, 42);
  const PointReport mc = mellin_consensus(s, low_exponent_grid());
  CHECK(std::abs(mc.estimate - Complex(1, 2)) <= 0.05);
  CHECK(mc.zero_atoms == 0u);
  MESSAGE("dispersion on 1e5 Cauchy draws, low grid: " << *mc.dispersion);

  CHECK_THROWS_AS(mellin_consensus(SampleSet({1.0, 2.0}), grid), NumericalError);
  CHECK_THROWS_AS(mellin_consensus(s, std::vector<MellinExponent>{}), DomainError);
}

TEST_CASE("Mellin dispersion separates normal from Cauchy data") {
  const auto grid = low_exponent_grid();
  const SampleSet cauchy_data = sample(CauchyDist{kI}, 100000, 42);
  const double cauchy_disp = *mellin_consensus(cauchy_data, grid).dispersion;
  const SampleSet normal_data(oracle::normal_draws(1000, 42));
  const PointReport normal = mellin_consensus(normal_data, grid);
  // Scale free comparison: divide by the fitted scale.
  const double normal_disp = *normal.dispersion / normal.estimate.imag();
  MESSAGE("Cauchy " << cauchy_disp << ", normal " << normal_disp);
  CHECK(normal_disp > 5 * cauchy_disp);
}

TEST_CASE("log-moment estimate") {
  CHECK(std::abs(logmoment_estimate(SampleSet({-1.0, 1.0})).estimate - Complex(0, 1)) <= 1e-15);
  const double e = std::exp(pi / std::sqrt(3.0));
  const PointReport three = logmoment_estimate(SampleSet({-1.0, e, 1 / e}));
  CHECK(std::abs(three.estimate - Complex(0.5, std::sqrt(3.0) / 2)) <= 1e-12);
  const PointReport positive = logmoment_estimate(SampleSet({1.0, 2.0}));
  CHECK(positive.estimate.imag() == 0.0);
  CHECK(positive.has_flag(flags::kBoundary));
  CHECK(logmoment_estimate(SampleSet({-1.0, -2.0})).has_flag(flags::kBoundary));
  CHECK_THROWS_AS(logmoment_estimate(SampleSet({0.0, 1.0})), DomainError);
}

TEST_CASE("estimators agree on a large Cauchy sample") {
  const SampleSet s = sample(CauchyDist{kI}, 100000, 42);
  const Complex mle = mle_fixed_point(s).estimate;
  const Complex mellin = mellin_consensus(s, default_exponent_grid()).estimate;
  const Complex logm = logmoment_estimate(s).estimate;
  CHECK(std::abs(mle - mellin) <= 0.05);
  CHECK(std::abs(mle - logm) <= 0.05);
  CHECK(std::abs(mellin - logm) <= 0.05);
}

TEST_CASE("circular fit") {
  const SampleSet angles = sample(CircularCauchyDist{DiskParam(0.5)}, 100000, 42);
  const PointReport r = circular_fit(angles);
  CHECK(r.converged);
  CHECK(std::abs(r.estimate - 0.5) <= 0.02);

  const PointReport sym = circular_fit(SampleSet({pi / 2, 3 * pi / 2}));
  CHECK(std::abs(sym.estimate) <= 1e-12);

  CHECK_THROWS_WITH_AS(circular_fit(SampleSet({0.0, 1.0, 2.0})), doctest::Contains("P(X != 0)"),
                       DomainError);
  CHECK_THROWS_AS(circular_fit(SampleSet({1.0, 1.0})), DegenerateSampleError);
}
