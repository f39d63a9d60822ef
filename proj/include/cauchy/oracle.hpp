#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cauchy/halfplane.hpp"
#include "cauchy/quadrature.hpp"
#include "cauchy/transforms.hpp"

namespace cauchy {

// Result for one family of analytic identities checked by quadrature.
struct IdentityCheck {
  std::string family;
  double worst_error = 0.0;
  double tolerance = 0.0;
  std::string worst_point;
  bool pass = false;
  // Extra per-family numbers, e.g. the sup-error table of the Poisson family.
  std::vector<std::pair<std::string, double>> table;
};

// Location-scale density p(x; gamma) used for the Mobius-mean family; the
// default is the Cauchy density. Swapping in another law is a negative control.
using LocationScaleDensity = std::function<double(double, const HalfPlaneParam&)>;

// Per-family tolerances.
namespace identity_tolerance {
inline constexpr double kMobiusMean = 1e-8;
inline constexpr double kMellinPower = 1e-6;
inline constexpr double kSplitForm = 1e-6;
inline constexpr double kSplitFormLimit = 1e-8;
inline constexpr double kCircular = 1e-8;
inline constexpr double kPoisson = 1e-10;
inline constexpr double kStieltjes = 1e-10;
}  // namespace identity_tolerance

// Re in {-2, 0, 2} x Im in {0.5, 1, 2}.
std::vector<HalfPlaneParam> default_identity_gamma_grid();

// Families, in order: mobius_mean, mellin_power, split_form, split_form_limit,
// circular, poisson, stieltjes. Quadrature failures are reported as a failed
// family rather than thrown.
std::vector<IdentityCheck> verify_identities(const std::vector<HalfPlaneParam>& gamma_grid,
                                             const std::vector<MellinExponent>& a_grid,
                                             const QuadratureConfig& cfg = {},
                                             const LocationScaleDensity& mobius_density = {});

bool all_pass(const std::vector<IdentityCheck>& checks);

}  // namespace cauchy
