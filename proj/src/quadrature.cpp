#include "cauchy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

#include "cauchy/errors.hpp"
#include "overloaded.hpp"

namespace cauchy {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kTMax = 6.0;
constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 8;

struct Panel {
  double a;
  double b;
};

struct PanelResult {
  Complex value;
  double error;
  std::size_t evaluations;
  bool converged;
};

// Unit-interval tanh-sinh node at parameter t: `comp` is 1 - tanh(s) and
// `weight` the derivative of the map, both computed without cancellation.
struct UnitNode {
  double comp;
  double weight;
};

UnitNode unit_node(double t) {
  const double s = kHalfPi * std::sinh(t);
  const double e = std::exp(-2.0 * s);
  const double denom = 1.0 + e;
  return {2.0 * e / denom, kHalfPi * std::cosh(t) * 4.0 * e / (denom * denom)};
}

class PanelRule {
public:
  PanelRule(const NodeIntegrand& f, double lo, double hi) : f_(f), lo_(lo), hi_(hi) {}

  PanelResult run(const Panel& p, double tol) const {
    const double h = 0.5 * (p.b - p.a);
    const double left_gap = p.a - lo_;
    const double right_gap = hi_ - p.b;
    std::size_t evals = 0;

    // Sum over nodes +-t; `comp` measured from the panel edge on each side.
    auto pair_sum = [&](double t) -> Complex {
      const UnitNode n = unit_node(t);
      const double d = h * n.comp;
      if (d == 0.0 || n.weight == 0.0) return {0.0, 0.0};
      const QuadratureNode right{p.b - d, left_gap + (2.0 * h - d), right_gap + d};
      const QuadratureNode left{p.a + d, left_gap + d, right_gap + (2.0 * h - d)};
      evals += 2;
      return n.weight * (eval(right) + eval(left));
    };

    Complex sum = kHalfPi * eval({0.5 * (p.a + p.b), left_gap + h, right_gap + h});
    ++evals;
    for (int k = 1; k <= static_cast<int>(kTMax); ++k) sum += pair_sum(k);
    double step = 1.0;
    Complex previous = h * step * sum;
    double diff = 0.0;
    for (int level = 1; level <= kMaxLevel; ++level) {
      step *= 0.5;
      for (double t = step; t <= kTMax; t += 2.0 * step) sum += pair_sum(t);
      const Complex current = h * step * sum;
      diff = std::abs(current - previous);
      previous = current;
      if (level >= kMinLevel && diff <= tol) return {current, diff, evals, true};
    }
    return {previous, diff, evals, false};
  }

private:
  Complex eval(const QuadratureNode& node) const {
    const Complex v = f_(node);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError("integrand is not finite at x = " + format_real(node.x));
    }
    return v;
  }

  const NodeIntegrand& f_;
  double lo_;
  double hi_;
};

std::vector<double> sorted_interior(std::span<const double> points, double lo, double hi) {
  std::vector<double> out;
  for (double p : points) {
    if (p > lo && p < hi) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Real-line abscissa for tangent parameter u, taking the large-|x| tails
// from the accurate endpoint distances.
double tangent_abscissa(const QuadratureNode& n, double center, double scale) {
  if (n.to_hi < 0.5) return center + scale / std::tan(n.to_hi);
  if (n.from_lo < 0.5) return center - scale / std::tan(n.from_lo);
  return center + scale * std::tan(n.x);
}

std::vector<double> tangent_splits(const std::vector<double>& splits, double center, double scale) {
  std::vector<double> out;
  out.reserve(splits.size());
  for (double s : splits) out.push_back(std::atan((s - center) / scale));
  return out;
}

Complex cauchy_expectation(const RealToComplex& f, const HalfPlaneParam& gamma,
                           const QuadratureConfig& cfg, double tol) {
  const double center = gamma.location();
  const double scale = gamma.scale();
  const NodeIntegrand g = [&](const QuadratureNode& n) {
    return f(tangent_abscissa(n, center, scale)) / std::numbers::pi;
  };
  const auto splits = tangent_splits(cfg.split_points, center, scale);
  return integrate(g, -kHalfPi, kHalfPi, splits, tol, cfg.max_subdivisions).value;
}

}  // namespace

QuadratureResult integrate(const NodeIntegrand& f, double lo, double hi,
                           std::span<const double> breakpoints, double abs_tol,
                           std::size_t max_panels) {
  if (!(hi > lo)) throw DomainError("integration interval must have hi > lo");
  if (!(abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");

  std::deque<Panel> pending;
  double a = lo;
  for (double b : sorted_interior(breakpoints, lo, hi)) {
    pending.push_back({a, b});
    a = b;
  }
  pending.push_back({a, hi});

  const PanelRule rule(f, lo, hi);
  const double width = hi - lo;
  QuadratureResult result{};
  std::size_t panels_seen = pending.size();
  while (!pending.empty()) {
    const Panel p = pending.front();
    pending.pop_front();
    const double tol = abs_tol * (p.b - p.a) / width;
    const PanelResult r = rule.run(p, tol);
    result.evaluations += r.evaluations;
    const double mid = 0.5 * (p.a + p.b);
    const bool splittable = mid > p.a && mid < p.b;
    if (r.converged || !splittable || panels_seen + 2 > max_panels) {
      result.value += r.value;
      result.error_estimate += r.error;
      ++result.panels;
      continue;
    }
    pending.push_back({p.a, mid});
    pending.push_back({mid, p.b});
    panels_seen += 2;
  }
  if (result.error_estimate > abs_tol) {
    throw NumericalError("quadrature did not converge: error estimate " +
                         format_real(result.error_estimate) + " exceeds tolerance " +
                         format_real(abs_tol) + " after " + std::to_string(panels_seen) +
                         " panels (achieved value " + format_complex(result.value) + ")");
  }
  return result;
}

Complex expectation(const RealToComplex& f, const DistSpec& spec, const QuadratureConfig& cfg) {
  return std::visit(
      detail::Overloaded{
          [&](const CauchyDist& d) { return cauchy_expectation(f, d.gamma, cfg, cfg.abs_tol); },
          [&](const CircularCauchyDist& d) {
            // Nodes next to 2pi can round onto it; the law is periodic.
            const NodeIntegrand g = [&](const QuadratureNode& n) {
              const double angle = n.x < 2.0 * std::numbers::pi ? n.x : 0.0;
              return f(angle) * circular_pdf(angle, d.w);
            };
            return integrate(g, 0.0, 2.0 * std::numbers::pi, cfg.split_points, cfg.abs_tol,
                             cfg.max_subdivisions)
                .value;
          },
          [&](const MixtureCauchyDist& d) {
            const MixtureParams& m = d.params;
            const double tol = 0.5 * cfg.abs_tol;
            return (1.0 - m.t()) * cauchy_expectation(f, m.gamma1(), cfg, tol) +
                   m.t() * cauchy_expectation(f, m.gamma2(), cfg, tol);
          },
      },
      spec);
}

Complex expectation_density(const RealToComplex& f, const Density& density, double center,
                            double scale, const QuadratureConfig& cfg) {
  if (!(scale > 0.0)) throw DomainError("tangent map scale must be positive");
  const NodeIntegrand g = [&](const QuadratureNode& n) -> Complex {
    const double x = tangent_abscissa(n, center, scale);
    const double p = density(x);
    if (p == 0.0) return {0.0, 0.0};
    const double t = (x - center) / scale;
    const double jacobian_weight = p * scale + (p * t) * t * scale;
    return f(x) * jacobian_weight;
  };
  const auto splits = tangent_splits(cfg.split_points, center, scale);
  return integrate(g, -kHalfPi, kHalfPi, splits, cfg.abs_tol, cfg.max_subdivisions).value;
}

}  // namespace cauchy
