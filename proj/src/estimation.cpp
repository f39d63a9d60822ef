#include "cauchy/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cauchy/errors.hpp"

namespace cauchy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxHalvings = 60;

double relative_scale(Complex z) { return std::max(1.0, std::abs(z)); }

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double cauchy_loglik(const SampleSet& s, Complex gamma) {
  return log_likelihood(s, CauchyDist{HalfPlaneParam(gamma)});
}

PointReport consensus_of(const std::vector<Complex>& estimates) {
  std::vector<double> re;
  std::vector<double> im;
  for (Complex e : estimates) {
    if (e.imag() > 0.0) {
      re.push_back(e.real());
      im.push_back(e.imag());
    }
  }
  if (re.empty()) {
    throw NumericalError("no exponent in the grid gives an estimate in the upper half-plane");
  }
  PointReport report{Complex(median_of(re), median_of(im))};
  report.iterations = estimates.size();
  double dispersion = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    for (std::size_t j = i + 1; j < estimates.size(); ++j) {
      dispersion = std::max(dispersion, std::abs(estimates[i] - estimates[j]));
    }
  }
  report.dispersion = dispersion;
  for (Complex e : estimates) {
    if (e.imag() > 0.0) report.residual = std::max(report.residual, std::abs(e - report.estimate));
  }
  report.converged = 2 * re.size() >= estimates.size();
  if (!report.converged) report.flags.emplace_back(flags::kFewExponentsInUpperHalfPlane);
  return report;
}

}  // namespace

void FixedPointConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("fixed-point tolerance must be positive");
  if (max_iter < 1) throw DomainError("fixed-point max_iter must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw DomainError("damping must lie in (0, 1]");
}

HalfPlaneParam robust_initial_estimate(const SampleSet& s) {
  const double median = weighted_quantile(s, 0.5);
  double scale = 0.5 * (weighted_quantile(s, 0.75) - weighted_quantile(s, 0.25));
  if (!(scale > 0.0)) {
    std::vector<double> dev(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) dev[i] = std::abs(s.values()[i] - median);
    scale = weighted_quantile(SampleSet(dev, {s.weights().begin(), s.weights().end()}), 0.5);
  }
  if (!(scale > 0.0)) {
    const auto [lo, hi] = std::minmax_element(s.values().begin(), s.values().end());
    scale = 0.5 * (*hi - *lo);
  }
  if (!(scale > 0.0)) scale = 1.0;
  return HalfPlaneParam(median, scale);
}

PointReport mle_fixed_point(const SampleSet& s, const FixedPointConfig& cfg) {
  cfg.validate();
  if (s.distinct_count() < 2) {
    throw DegenerateSampleError("the Cauchy MLE needs at least two distinct observations");
  }
  Complex gamma = (cfg.init ? *cfg.init : robust_initial_estimate(s)).value();
  Complex image = mobius_stat(s, HalfPlaneParam(gamma));
  double loglik = cauchy_loglik(s, gamma);

  PointReport report{gamma};
  report.residual = std::abs(image - gamma) / relative_scale(gamma);
  bool damped = false;
  if (report.residual <= cfg.tol) {
    report.converged = true;
  }
  for (std::size_t it = 1; it <= cfg.max_iter && !report.converged; ++it) {
    double d = cfg.damping;
    Complex candidate;
    double candidate_loglik = 0.0;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, d *= 0.5) {
      candidate = gamma + d * (image - gamma);
      if (!(candidate.imag() > 0.0)) continue;
      candidate_loglik = cauchy_loglik(s, candidate);
      if (candidate_loglik >= loglik - 1e-14 * (1.0 + std::abs(loglik))) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      report.flags.emplace_back(flags::kStalled);
      break;
    }
    if (d < cfg.damping) damped = true;
    const double step = std::abs(candidate - gamma) / relative_scale(candidate);
    gamma = candidate;
    loglik = candidate_loglik;
    image = mobius_stat(s, HalfPlaneParam(gamma));
    report.estimate = gamma;
    report.iterations = it;
    report.residual = std::abs(image - gamma) / relative_scale(gamma);
    report.converged = step <= cfg.tol && report.residual <= cfg.tol;
  }
  if (damped) report.flags.emplace_back(flags::kDamped);
  report.loglik = loglik;
  return report;
}

MellinEstimate mellin_estimate_from_moment(Complex moment, const MellinExponent& a) {
  if (moment == Complex(0.0, 0.0)) {
    throw NumericalError("Mellin moment is zero; its 1/a power is undefined");
  }
  const Complex value = cpow(moment, 1.0 / a.value());
  return {value, value.imag() > 0.0};
}

MellinEstimate mellin_estimate(const SampleSet& s, const MellinExponent& a) {
  if (!(a.value().real() > 0.0)) throw DomainError("mellin_estimate needs Re(a) > 0");
  return mellin_estimate_from_moment(mellin_empirical(s, a), a);
}

MellinEstimate mellin_estimate(const DistSpec& spec, const MellinExponent& a,
                               const QuadratureConfig& cfg) {
  if (!(a.value().real() > 0.0)) throw DomainError("mellin_estimate needs Re(a) > 0");
  return mellin_estimate_from_moment(mellin_transform(spec, a, cfg), a);
}

PointReport mellin_consensus(const SampleSet& s, std::span<const MellinExponent> grid) {
  if (grid.empty()) throw DomainError("exponent grid is empty");
  for (const auto& a : grid) {
    if (!(a.value().real() > 0.0)) throw DomainError("consensus grid must lie in (0, 1)");
  }
  const std::vector<Complex> moments = mellin_empirical_grid(s, grid);
  std::vector<Complex> estimates;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    estimates.push_back(mellin_estimate_from_moment(moments[j], grid[j]).value);
  }
  PointReport report = consensus_of(estimates);
  report.zero_atoms = zero_atom_count(s);
  return report;
}

PointReport mellin_consensus(const DistSpec& spec, std::span<const MellinExponent> grid,
                             const QuadratureConfig& cfg) {
  if (grid.empty()) throw DomainError("exponent grid is empty");
  std::vector<Complex> estimates;
  for (const auto& a : grid) estimates.push_back(mellin_estimate(spec, a, cfg).value);
  return consensus_of(estimates);
}

PointReport logmoment_estimate(const SampleSet& s) {
  double mean_log_abs = 0.0;
  double negative = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.values()[i];
    const double w = s.weights()[i];
    if (w == 0.0) continue;
    if (x == 0.0) {
      throw DomainError("log-moment estimate is undefined for an observation equal to 0");
    }
    mean_log_abs += w * std::log(std::abs(x));
    if (x < 0.0) negative += w;
  }
  PointReport report{std::exp(mean_log_abs) * std::polar(1.0, kPi * negative)};
  report.converged = true;
  if (!(negative > 0.0 && negative < 1.0) || !(report.estimate.imag() > 0.0)) {
    report.flags.emplace_back(flags::kBoundary);
  }
  return report;
}

PointReport circular_fit(const SampleSet& angles, const FixedPointConfig& cfg) {
  validate_angles(angles);
  // phi_i^{-1}(e^{ix}) = i (1 + e^{ix}) / (1 - e^{ix}) = -cot(x / 2), real.
  std::vector<double> line(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    line[i] = -1.0 / std::tan(0.5 * angles.values()[i]);
  }
  const SampleSet mapped(std::move(line), {angles.weights().begin(), angles.weights().end()});
  PointReport fit = mle_fixed_point(mapped, cfg);
  const HalfPlaneParam unit(0.0, 1.0);
  PointReport report = fit;
  report.estimate = mobius_to_disk(unit, fit.estimate);
  report.loglik = log_likelihood(angles, CircularCauchyDist{DiskParam(report.estimate)});
  return report;
}

}  // namespace cauchy
