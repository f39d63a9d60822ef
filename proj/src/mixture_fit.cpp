#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "cauchy/errors.hpp"
#include "cauchy/estimation.hpp"
#include "cauchy/random.hpp"

namespace cauchy {

namespace {

constexpr std::size_t kDim = 5;
using Point = std::array<double, kDim>;

// Unconstrained coordinates: (logit t, Re g1, log Im g1, Re g2, log Im g2).
struct Unpacked {
  double t;
  Complex g1;
  Complex g2;
};

Unpacked unpack(const Point& p) {
  return {1.0 / (1.0 + std::exp(-p[0])), Complex(p[1], std::exp(p[2])),
          Complex(p[3], std::exp(p[4]))};
}

Point pack(double t, Complex g1, Complex g2) {
  return {std::log(t / (1.0 - t)), g1.real(), std::log(g1.imag()), g2.real(), std::log(g2.imag())};
}

struct NelderMeadResult {
  Point x;
  double f;
  std::size_t evaluations;
};

struct Minimization {
  const std::function<double(const Point&)>* f;
  std::size_t evaluations = 0;
};

double gsl_objective(const gsl_vector* x, void* params) {
  auto* m = static_cast<Minimization*>(params);
  Point p;
  for (std::size_t k = 0; k < kDim; ++k) p[k] = gsl_vector_get(x, k);
  ++m->evaluations;
  const double v = (*m->f)(p);
  // Keep the simplex arithmetic finite outside the parameter domain.
  return std::isfinite(v) ? v : 1e300;
}

// Nelder-Mead (GSL nmsimplex2) from `start` with initial edge `step`, until
// the simplex shrinks below 1e-12 or `max_evals` is spent.
NelderMeadResult nelder_mead(const std::function<double(const Point&)>& f, Point start, double step,
                             std::size_t max_evals) {
  Minimization m{&f};
  gsl_multimin_function fn{&gsl_objective, kDim, &m};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(kDim), &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> steps(gsl_vector_alloc(kDim), &gsl_vector_free);
  for (std::size_t k = 0; k < kDim; ++k) gsl_vector_set(x.get(), k, start[k]);
  gsl_vector_set_all(steps.get(), step);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kDim),
      &gsl_multimin_fminimizer_free);

  // GSL's default handler aborts; failures here just end the run.
  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  if (gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), steps.get()) == GSL_SUCCESS) {
    while (m.evaluations < max_evals) {
      if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_fminimizer_size(solver.get()) <= 1e-12) break;
    }
  }
  gsl_set_error_handler(previous);

  Point best;
  for (std::size_t k = 0; k < kDim; ++k) best[k] = gsl_vector_get(solver->x, k);
  return {best, solver->fval, m.evaluations};
}

// Rough single-Cauchy location/scale from the targets, used to place starts.
Complex single_component_guess(std::span<const MellinExponent> grid,
                               std::span<const Complex> targets) {
  std::vector<double> re;
  std::vector<double> im;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (targets[j] == Complex(0.0, 0.0)) continue;
    const Complex e = cpow(targets[j], 1.0 / grid[j].value());
    if (e.imag() > 0.0 && std::isfinite(e.real()) && std::isfinite(e.imag())) {
      re.push_back(e.real());
      im.push_back(e.imag());
    }
  }
  if (re.empty()) return {0.0, 1.0};
  std::sort(re.begin(), re.end());
  std::sort(im.begin(), im.end());
  return {re[re.size() / 2], im[im.size() / 2]};
}

}  // namespace

MixtureReport mixture_fit_moments(std::span<const MellinExponent> grid,
                                  std::span<const Complex> targets, const MixtureFitConfig& cfg) {
  if (grid.size() < 5) {
    throw DomainError("mixture fit needs at least 5 exponents for its 5 real unknowns");
  }
  if (grid.size() != targets.size()) throw DomainError("grid and target moments differ in length");
  if (cfg.starts < 1) throw DomainError("mixture fit needs at least one start");
  for (const auto& a : grid) {
    if (!(a.value().real() > 0.0)) throw DomainError("mixture grid must lie in (0, 1)");
  }

  double target_norm = 0.0;
  for (Complex m : targets) target_norm += std::norm(m);
  target_norm = std::sqrt(target_norm);
  if (!(target_norm > 0.0)) throw DomainError("target moments are all zero");

  const auto objective = [&](const Point& p) {
    const Unpacked u = unpack(p);
    if (!(u.g1.imag() > 0.0 && u.g2.imag() > 0.0 && u.t > 0.0 && u.t < 1.0)) {
      return std::numeric_limits<double>::infinity();
    }
    double ss = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Complex a = grid[j].value();
      const Complex model = (1.0 - u.t) * cpow(u.g1, a) + u.t * cpow(u.g2, a);
      ss += std::norm(targets[j] - model);
    }
    return ss;
  };

  const Complex center = single_component_guess(grid, targets);
  const double mu = center.real();
  const double sigma = center.imag();
  const std::size_t per_run = std::max<std::size_t>(cfg.max_evaluations / cfg.starts / 4, 200);

  NelderMeadResult best{};
  best.f = std::numeric_limits<double>::infinity();
  std::size_t total_evals = 0;
  for (std::size_t k = 0; k < cfg.starts; ++k) {
    RandomStream rng(cfg.seed, k);
    Point start;
    if (k == 0) {
      start = pack(0.5, Complex(mu - sigma, sigma), Complex(mu + sigma, sigma));
    } else {
      const double t = rng.uniform(0.2, 0.8);
      const Complex g1(mu - sigma * rng.uniform(0.5, 3.0), sigma * std::exp(rng.uniform(-1.0, 1.0)));
      const Complex g2(mu + sigma * rng.uniform(0.5, 3.0), sigma * std::exp(rng.uniform(-1.0, 1.0)));
      start = pack(t, g1, g2);
    }
    // Restart from the best vertex until restarts stop helping.
    NelderMeadResult run = nelder_mead(objective, start, 0.5, per_run);
    total_evals += run.evaluations;
    for (int restart = 0; restart < 3; ++restart) {
      NelderMeadResult again = nelder_mead(objective, run.x, 0.05, per_run);
      total_evals += again.evaluations;
      const bool improved = again.f < run.f * (1.0 - 1e-10);
      if (again.f <= run.f) run = again;
      if (!improved) break;
    }
    if (run.f < best.f) best = run;
  }

  // A start can run off to a boundary of the parameter space; keep the
  // reported point valid and let the flags and residual tell the story.
  Unpacked u = unpack(best.x);
  bool clamped = false;
  const double t_floor = 1e-12;
  if (!(u.t > t_floor && u.t < 1.0 - t_floor)) {
    u.t = std::clamp(u.t, t_floor, 1.0 - t_floor);
    clamped = true;
  }
  for (Complex* g : {&u.g1, &u.g2}) {
    if (!(g->imag() > std::numeric_limits<double>::min())) {
      *g = Complex(g->real(), std::numeric_limits<double>::min());
      clamped = true;
    }
  }
  if (u.g1 == u.g2) {
    throw NumericalError("mixture fit collapsed onto a single component");
  }
  MixtureReport report{MixtureParams(u.t, HalfPlaneParam(u.g1), HalfPlaneParam(u.g2))};
  report.iterations = total_evals;
  report.residual = std::sqrt(best.f) / target_norm;
  report.converged = report.residual <= cfg.residual_ceiling;
  const double t = report.estimate.t();
  const Complex g1 = report.estimate.gamma1().value();
  const Complex g2 = report.estimate.gamma2().value();
  if (clamped) report.converged = false;
  // A scale this small is an atom on the real line, not a Cauchy component.
  for (Complex g : {g1, g2}) {
    if (g.imag() <= 1e-8 * std::max(1.0, std::abs(g))) {
      report.flags.emplace_back(flags::kBoundary);
      report.converged = false;
      break;
    }
  }
  if (clamped || t < 1e-3 || t > 1.0 - 1e-3 || std::abs(g1 - g2) < 1e-3 * std::max(1.0, std::abs(g1))) {
    report.flags.emplace_back(flags::kNonIdentifiable);
  }
  return report;
}

MixtureReport mixture_fit(const SampleSet& s, std::span<const MellinExponent> grid,
                          const MixtureFitConfig& cfg) {
  const std::vector<Complex> targets = mellin_empirical_grid(s, grid);
  MixtureReport report = mixture_fit_moments(grid, targets, cfg);
  report.zero_atoms = zero_atom_count(s);
  const DistSpec fitted = MixtureCauchyDist{report.estimate};
  report.loglik = log_likelihood(s, fitted);
  return report;
}

}  // namespace cauchy
