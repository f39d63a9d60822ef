#include "cauchy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "cauchy/distributions.hpp"
#include "cauchy/errors.hpp"

namespace cauchy {

namespace {

constexpr double kPi = std::numbers::pi;

// Tracks the worst error of a family and the grid point where it occurred.
class FamilyTracker {
public:
  FamilyTracker(std::string family, double tolerance) {
    check_.family = std::move(family);
    check_.tolerance = tolerance;
  }

  void record(double error, const std::string& point) {
    if (!(error <= check_.worst_error) || !seen_) {
      check_.worst_error = error;
      check_.worst_point = point;
      seen_ = true;
    }
  }

  void fail(const std::string& reason) { failure_ = reason; }
  IdentityCheck& check() { return check_; }

  IdentityCheck finish() {
    if (failure_) {
      check_.pass = false;
      check_.worst_error = std::numeric_limits<double>::infinity();
      check_.worst_point = *failure_;
    } else {
      check_.pass = std::isfinite(check_.worst_error) && check_.worst_error <= check_.tolerance;
    }
    return check_;
  }

private:
  IdentityCheck check_;
  bool seen_ = false;
  std::optional<std::string> failure_;
};

std::string point_label(const char* n1, Complex v1, const char* n2, Complex v2) {
  return std::string(n1) + "=" + format_complex(v1) + " " + n2 + "=" + format_complex(v2);
}

template <class Body>
IdentityCheck run_family(const std::string& name, double tol, Body&& body) {
  FamilyTracker tracker(name, tol);
  try {
    body(tracker);
  } catch (const std::exception& e) {
    tracker.fail(e.what());
  }
  return tracker.finish();
}

}  // namespace

std::vector<HalfPlaneParam> default_identity_gamma_grid() {
  std::vector<HalfPlaneParam> grid;
  for (double re : {-2.0, 0.0, 2.0}) {
    for (double im : {0.5, 1.0, 2.0}) grid.emplace_back(re, im);
  }
  return grid;
}

std::vector<IdentityCheck> verify_identities(const std::vector<HalfPlaneParam>& gamma_grid,
                                             const std::vector<MellinExponent>& a_grid,
                                             const QuadratureConfig& cfg,
                                             const LocationScaleDensity& mobius_density) {
  if (gamma_grid.empty() || a_grid.empty()) throw DomainError("identity grids must be nonempty");
  std::vector<IdentityCheck> out;

  // E[phi_gamma(X)] = phi_gamma(alpha) for X ~ C(alpha).
  out.push_back(run_family("mobius_mean", identity_tolerance::kMobiusMean, [&](auto& t) {
    for (const auto& alpha : gamma_grid) {
      for (const auto& gamma : gamma_grid) {
        const auto phi = [&](double x) { return mobius_to_disk(gamma, Complex(x, 0.0)); };
        Complex mean;
        if (mobius_density) {
          mean = expectation_density(
              phi, [&](double x) { return mobius_density(x, alpha); }, alpha.location(),
              alpha.scale(), cfg);
        } else {
          mean = expectation(phi, CauchyDist{alpha}, cfg);
        }
        t.record(std::abs(mean - mobius_to_disk(gamma, alpha.value())),
                 point_label("alpha", alpha.value(), "gamma", gamma.value()));
      }
    }
  }));

  // E[X^a] = gamma^a.
  out.push_back(run_family("mellin_power", identity_tolerance::kMellinPower, [&](auto& t) {
    for (const auto& gamma : gamma_grid) {
      for (const auto& a : a_grid) {
        const Complex moment = mellin_transform(CauchyDist{gamma}, a, cfg);
        t.record(std::abs(moment - cpow(gamma.value(), a.value())),
                 point_label("gamma", gamma.value(), "a", a.value()));
      }
    }
  }));

  // Split form g(a) by quadrature against its closed form.
  out.push_back(run_family("split_form", identity_tolerance::kSplitForm, [&](auto& t) {
    for (const auto& gamma : gamma_grid) {
      for (const auto& a : a_grid) {
        const Complex g = mellin_split_g(CauchyDist{gamma}, a, cfg);
        t.record(std::abs(g - g_closed_form(gamma, a)),
                 point_label("gamma", gamma.value(), "a", a.value()));
      }
    }
  }));

  // a -> 0 extension equals P(X > 0) + i P(X < 0).
  out.push_back(run_family("split_form_limit", identity_tolerance::kSplitFormLimit, [&](auto& t) {
    for (const auto& gamma : gamma_grid) {
      const double negative = cauchy_cdf(0.0, gamma);
      const Complex expected(1.0 - negative, negative);
      t.record(std::abs(g_closed_form(gamma, MellinExponent(0.0)) - expected),
               "gamma=" + format_complex(gamma.value()));
    }
  }));

  // G_X(eta) = w for X ~ circular Cauchy(w).
  out.push_back(run_family("circular", identity_tolerance::kCircular, [&](auto& t) {
    for (Complex w : {Complex(0.0, 0.0), Complex(0.3, 0.0), Complex(0.0, 0.6)}) {
      for (Complex eta : {Complex(0.0, 0.0), Complex(0.4, 0.0), Complex(-0.4, 0.0)}) {
        const Complex g = circular_stat(CircularCauchyDist{DiskParam(w)}, DiskParam(eta), cfg);
        t.record(std::abs(g - w), point_label("w", w, "eta", eta));
      }
    }
  }));

  // Poisson smoothing of 1/(1+x^2) has closed form (1+b)/(a^2+(1+b)^2); its sup
  // distance to f must shrink with b.
  out.push_back(run_family("poisson", identity_tolerance::kPoisson, [&](auto& t) {
    const auto f = [](double x) { return 1.0 / (1.0 + x * x); };
    double previous_sup = std::numeric_limits<double>::infinity();
    for (double b : {1.0, 0.1, 0.01}) {
      double sup = 0.0;
      for (int k = 0; k <= 20; ++k) {
        const double a = -5.0 + 0.5 * k;
        const double smoothed = poisson_smooth(f, a, b, cfg);
        const double closed = (1.0 + b) / (a * a + (1.0 + b) * (1.0 + b));
        t.record(std::abs(smoothed - closed),
                 "a=" + format_real(a) + " b=" + format_real(b));
        sup = std::max(sup, std::abs(f(a) - smoothed));
      }
      t.check().table.emplace_back("sup_error_b=" + format_real(b), sup);
      if (!(sup < previous_sup)) t.fail("sup error did not decrease at b=" + format_real(b));
      previous_sup = sup;
    }
  }));

  // (1/pi) E[1/(X - z)] = 1 / (pi (conj(alpha) - z)).
  out.push_back(run_family("stieltjes", identity_tolerance::kStieltjes, [&](auto& t) {
    for (const auto& alpha : gamma_grid) {
      for (const auto& z : gamma_grid) {
        const Complex f = stieltjes_transform(CauchyDist{alpha}, z.value(), cfg);
        const Complex closed = 1.0 / (kPi * (std::conj(alpha.value()) - z.value()));
        t.record(std::abs(f - closed), point_label("alpha", alpha.value(), "z", z.value()));
      }
    }
  }));

  return out;
}

bool all_pass(const std::vector<IdentityCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

}  // namespace cauchy
