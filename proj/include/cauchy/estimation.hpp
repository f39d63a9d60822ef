#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cauchy/distributions.hpp"
#include "cauchy/halfplane.hpp"
#include "cauchy/transforms.hpp"

namespace cauchy {

struct FixedPointConfig {
  double tol = 1e-12;
  std::size_t max_iter = 500;
  double damping = 1.0;
  std::optional<HalfPlaneParam> init;

  void validate() const;
};

namespace flags {
inline constexpr const char* kOutsideUpperHalfPlane = "outside_upper_half_plane";
inline constexpr const char* kFewExponentsInUpperHalfPlane = "few_exponents_in_upper_half_plane";
inline constexpr const char* kBoundary = "boundary";
inline constexpr const char* kNonIdentifiable = "non_identifiable";
inline constexpr const char* kDamped = "damped";
inline constexpr const char* kStalled = "stalled";
}  // namespace flags

template <class Estimate>
struct EstimateReport {
  explicit EstimateReport(Estimate e) : estimate(std::move(e)) {}

  Estimate estimate;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
  std::optional<double> dispersion;
  std::optional<double> loglik;
  std::vector<std::string> flags;
  // Observations exactly equal to 0 (Mellin estimators only).
  std::optional<std::size_t> zero_atoms;

  bool has_flag(std::string_view f) const {
    for (const auto& x : flags) {
      if (x == f) return true;
    }
    return false;
  }
};

using PointReport = EstimateReport<Complex>;
using MixtureReport = EstimateReport<MixtureParams>;

// Cauchy MLE as the fixed point gamma = F_X(gamma) of the Mobius statistic.
// Iterates gamma <- gamma + d (F_X(gamma) - gamma), halving d for any step
// that lowers the likelihood. `residual` is |gamma - F_X(gamma)| relative to
// max(1, |gamma|); converged means both that residual and the last step are
// within tol. Throws DegenerateSampleError for fewer than two distinct values.
PointReport mle_fixed_point(const SampleSet& s, const FixedPointConfig& cfg = {});

// Median + i * half interquartile range, with fallbacks for tied data.
HalfPlaneParam robust_initial_estimate(const SampleSet& s);

struct MellinEstimate {
  Complex value;
  bool in_upper_half_plane;
};

// E[X^a]^{1/a}; for C(gamma) this is gamma.
MellinEstimate mellin_estimate(const SampleSet& s, const MellinExponent& a);
MellinEstimate mellin_estimate(const DistSpec& spec, const MellinExponent& a,
                               const QuadratureConfig& cfg = {});
MellinEstimate mellin_estimate_from_moment(Complex moment, const MellinExponent& a);

// Componentwise median of the per-exponent estimates that land in the upper
// half-plane; dispersion is the largest pairwise distance among all of them.
PointReport mellin_consensus(const SampleSet& s, std::span<const MellinExponent> grid);
PointReport mellin_consensus(const DistSpec& spec, std::span<const MellinExponent> grid,
                             const QuadratureConfig& cfg = {});

// exp(E log|X|) exp(i pi P(X < 0)), using the principal logarithm.
PointReport logmoment_estimate(const SampleSet& s);

// Circular-Cauchy fit: angles are carried to the real line by
// x -> phi_i^{-1}(e^{ix}), fitted there, and mapped back with phi_i.
PointReport circular_fit(const SampleSet& angles, const FixedPointConfig& cfg = {});

struct MixtureFitConfig {
  std::size_t starts = 8;
  std::uint64_t seed = 0;
  // Fit fails when the best relative moment residual stays above this.
  double residual_ceiling = 0.1;
  std::size_t max_evaluations = 20000;
};

// Least-squares match of Mellin moments to (1 - t) gamma1^a + t gamma2^a by
// multi-start Nelder-Mead. `residual` is the root-sum-square mismatch over
// the grid divided by the root-sum-square of the targets. A component whose
// scale collapses toward the real line is flagged as a boundary fit and is
// not reported as converged.
MixtureReport mixture_fit(const SampleSet& s, std::span<const MellinExponent> grid,
                          const MixtureFitConfig& cfg = {});
MixtureReport mixture_fit_moments(std::span<const MellinExponent> grid,
                                  std::span<const Complex> targets,
                                  const MixtureFitConfig& cfg = {});

}  // namespace cauchy
