#include "cauchy/gof.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cauchy/errors.hpp"
#include "compensated_sum.hpp"

namespace cauchy {

namespace {

void check_test_inputs(const SampleSet& s, std::size_t grid_size, std::size_t B) {
  if (s.size() < 10) throw DomainError("goodness-of-fit tests need at least 10 observations");
  if (grid_size < 3) throw DomainError("goodness-of-fit grid needs at least 3 points");
  if (B < 99) throw DomainError("goodness-of-fit tests need at least 99 bootstrap replications");
}

HalfPlaneParam fit_null(const SampleSet& s) {
  const PointReport fit = mle_fixed_point(s);
  if (!fit.converged) {
    throw NumericalError("Cauchy MLE did not converge (iterations " +
                         std::to_string(fit.iterations) + ", residual " +
                         format_real(fit.residual) + ")");
  }
  return HalfPlaneParam(fit.estimate);
}

double bootstrap_p_value(double observed, std::size_t B, std::size_t n, std::uint64_t seed,
                         const HalfPlaneParam& null,
                         const std::function<double(const SampleSet&)>& statistic) {
  std::size_t exceed = 0;
  const DistSpec law = CauchyDist{null};
  for (std::size_t b = 0; b < B; ++b) {
    const SampleSet replica = sample(law, n, seed, b);
    if (statistic(replica) >= observed) ++exceed;
  }
  return static_cast<double>(1 + exceed) / static_cast<double>(B + 1);
}

}  // namespace

std::vector<Complex> default_mobius_grid() {
  return {{-1.0, 1.0}, {-0.5, 1.0}, {0.5, 1.0}, {1.0, 1.0}, {0.0, 0.5}, {0.0, 2.0}};
}

std::vector<MellinExponent> default_mellin_test_grid() { return low_exponent_grid(); }

double mobius_test_statistic(const SampleSet& s, const HalfPlaneParam& fitted,
                             std::span<const Complex> standardized_grid) {
  const double mu = fitted.location();
  const double sigma = fitted.scale();
  double worst = 0.0;
  for (Complex z : standardized_grid) {
    if (!(z.imag() > 0.0)) throw DomainError("standardized Mobius grid points need Im > 0");
    const HalfPlaneParam gamma(mu + sigma * z);
    worst = std::max(worst, std::abs(mobius_stat(s, gamma) - fitted.value()) / sigma);
  }
  return worst;
}

double mellin_test_statistic(const SampleSet& s, std::span<const MellinExponent> grid) {
  const std::vector<Complex> moments = mellin_empirical_grid(s, grid);
  std::vector<Complex> estimates;
  estimates.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    estimates.push_back(mellin_estimate_from_moment(moments[j], grid[j]).value);
  }
  double dispersion = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    for (std::size_t j = i + 1; j < estimates.size(); ++j) {
      dispersion = std::max(dispersion, std::abs(estimates[i] - estimates[j]));
    }
  }
  return dispersion;
}

TestReport cauchy_test_mobius(const SampleSet& s, std::span<const Complex> standardized_grid,
                              std::size_t B, std::uint64_t seed) {
  check_test_inputs(s, standardized_grid.size(), B);
  const HalfPlaneParam null = fit_null(s);

  TestReport report;
  report.null_params = null.value();
  report.replications = B;
  for (Complex z : standardized_grid) {
    report.grid_used.push_back(null.location() + null.scale() * z);
  }
  report.statistic = mobius_test_statistic(s, null, standardized_grid);
  report.p_value = bootstrap_p_value(report.statistic, B, s.size(), seed, null,
                                     [&](const SampleSet& replica) {
                                       const PointReport fit = mle_fixed_point(replica);
                                       return mobius_test_statistic(
                                           replica, HalfPlaneParam(fit.estimate),
                                           standardized_grid);
                                     });
  return report;
}

TestReport cauchy_test_mellin(const SampleSet& s, std::span<const MellinExponent> grid,
                              std::size_t B, std::uint64_t seed) {
  check_test_inputs(s, grid.size(), B);
  for (const auto& a : grid) {
    if (!(a.value().real() > 0.0)) throw DomainError("Mellin test grid must lie in (0, 1)");
  }
  const PointReport consensus = mellin_consensus(s, grid);
  const std::vector<Complex> moments = mellin_empirical_grid(s, grid);
  std::size_t in_upper = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (mellin_estimate_from_moment(moments[j], grid[j]).in_upper_half_plane) ++in_upper;
  }
  if (in_upper < 3) {
    throw NumericalError("fewer than 3 exponents give a Mellin estimate in the upper half-plane");
  }
  const HalfPlaneParam null = fit_null(s);

  TestReport report;
  report.null_params = null.value();
  report.replications = B;
  for (const auto& a : grid) report.grid_used.push_back(a.value());
  report.statistic = *consensus.dispersion;
  report.p_value = bootstrap_p_value(
      report.statistic, B, s.size(), seed, null,
      [&](const SampleSet& replica) { return mellin_test_statistic(replica, grid); });
  return report;
}

std::vector<LogMomentDiscrepancy> logmoment_diagnostic(const SampleSet& s, int n_max) {
  if (n_max < 2) throw DomainError("logmoment_diagnostic needs n_max >= 2");
  std::vector<Complex> logs(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.values()[i] == 0.0) {
      throw DomainError("log moments are undefined for an observation equal to 0");
    }
    logs[i] = principal_log(s.values()[i]);
  }
  std::vector<Complex> powers(s.size(), Complex(1.0, 0.0));
  Complex mean_log;
  std::vector<LogMomentDiscrepancy> out;
  for (int order = 1; order <= n_max; ++order) {
    detail::CompensatedSum moment;
    for (std::size_t i = 0; i < s.size(); ++i) {
      powers[i] *= logs[i];
      moment.add(s.weights()[i] * powers[i]);
    }
    if (order == 1) mean_log = moment.value();
    Complex mean_power(1.0, 0.0);
    for (int k = 0; k < order; ++k) mean_power *= mean_log;
    out.push_back({order, std::abs(moment.value() - mean_power)});
  }
  return out;
}

}  // namespace cauchy
