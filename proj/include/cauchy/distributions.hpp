#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cauchy/halfplane.hpp"

namespace cauchy {

// Two-component Cauchy mixture (1 - t) C(gamma1) + t C(gamma2).
// Stored canonically: gamma1 <= gamma2 lexicographically by (Re, Im);
// a swapped labeling is normalized by replacing t with 1 - t.
class MixtureParams {
public:
  MixtureParams(double t, HalfPlaneParam gamma1, HalfPlaneParam gamma2);

  double t() const { return t_; }
  const HalfPlaneParam& gamma1() const { return gamma1_; }
  const HalfPlaneParam& gamma2() const { return gamma2_; }

private:
  double t_;
  HalfPlaneParam gamma1_;
  HalfPlaneParam gamma2_;
};

struct CauchyDist {
  HalfPlaneParam gamma;
};

struct CircularCauchyDist {
  DiskParam w;
};

struct MixtureCauchyDist {
  MixtureParams params;
};

using DistSpec = std::variant<CauchyDist, CircularCauchyDist, MixtureCauchyDist>;

// Finite weighted empirical measure. Weights are nonnegative and sum to 1.
class SampleSet {
public:
  // Equal weights 1/n.
  explicit SampleSet(std::vector<double> values);
  SampleSet(std::vector<double> values, std::vector<double> weights);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return weights_; }

  std::size_t distinct_count() const;
  bool is_point_mass() const { return distinct_count() == 1; }

private:
  std::vector<double> values_;
  std::vector<double> weights_;
};

double cauchy_pdf(double x, const HalfPlaneParam& gamma);
double cauchy_cdf(double x, const HalfPlaneParam& gamma);
// Throws DomainError unless 0 < p < 1.
double cauchy_quantile(double p, const HalfPlaneParam& gamma);

// Angle must lie in [0, 2*pi).
double circular_pdf(double angle, const DiskParam& w);
double mixture_pdf(double x, const MixtureParams& m);

double pdf(const DistSpec& spec, double x);

// Deterministic in (spec, n, seed, stream). Circular draws are angles in
// [0, 2*pi). All weights are 1/n.
SampleSet sample(const DistSpec& spec, std::size_t n, std::uint64_t seed,
                 std::uint64_t stream = 0);

// Sum_i w_i log pdf(x_i); i.e. the per-observation average for equal weights.
double log_likelihood(const SampleSet& s, const DistSpec& spec);

// Weighted quantile; ties at an exact cumulative-weight boundary average
// the two neighbouring order statistics.
double weighted_quantile(const SampleSet& s, double p);

}  // namespace cauchy
