#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cauchy/distributions.hpp"
#include "cauchy/halfplane.hpp"
#include "cauchy/quadrature.hpp"

namespace cauchy {

// Exponent of a Mellin transform E[X^a]. Cauchy laws only have fractional
// moments of order below 1, so 0 <= Re(a) < 1 is enforced. Negative real
// parts (down to -1) need an explicit opt-in: they are valid for Cauchy laws
// but empirical sums blow up for observations near 0.
class MellinExponent {
public:
  explicit MellinExponent(Complex a, bool allow_negative = false);
  explicit MellinExponent(double a, bool allow_negative = false)
      : MellinExponent(Complex(a, 0.0), allow_negative) {}

  Complex value() const { return a_; }
  bool is_real() const { return a_.imag() == 0.0; }

private:
  Complex a_;
};

// a = 0.1, 0.2, ..., 0.9.
std::vector<MellinExponent> default_exponent_grid();

// a = 0.05, 0.10, ..., 0.45. For Cauchy samples E|X|^{2a} is finite only when
// a < 1/2, so these exponents give per-exponent estimates of finite variance.
std::vector<MellinExponent> low_exponent_grid();

// F_X(gamma) = E[X / (X - conj(gamma))] / E[1 / (X - conj(gamma))].
// Lies in the closed upper half-plane; strictly inside unless X is a point mass.
Complex mobius_stat(const SampleSet& s, const HalfPlaneParam& gamma);
Complex mobius_stat(const DistSpec& spec, const HalfPlaneParam& gamma,
                    const QuadratureConfig& cfg = {});
// Same statistic for an arbitrary density on the real line.
Complex mobius_stat(const Density& density, double center, double scale,
                    const HalfPlaneParam& gamma, const QuadratureConfig& cfg = {});

// G_X(eta) = E[e^{iX} / (1 - eta e^{iX})] / E[1 / (1 - eta e^{iX})] for angles
// in [0, 2pi). A zero angle is rejected: the circular characterization needs
// P(X != 0) = 1.
Complex circular_stat(const SampleSet& angles, const DiskParam& eta);
// Throws DomainError for angles outside [0, 2pi) or exactly 0.
void validate_angles(const SampleSet& angles);
Complex circular_stat(const DistSpec& spec, const DiskParam& eta, const QuadratureConfig& cfg = {});

// E[X^a] with the principal branch (negative reals raised via +i*pi) and
// 0^a := 0, so atoms at zero contribute nothing.
Complex mellin_empirical(const SampleSet& s, const MellinExponent& a);
Complex mellin_transform(const DistSpec& spec, const MellinExponent& a,
                         const QuadratureConfig& cfg = {});

// E[X^a] at every exponent in `grid` sharing one pass of logarithms; uses the
// split form for real exponents.
std::vector<Complex> mellin_empirical_grid(const SampleSet& s, std::span<const MellinExponent> grid);

// g(a) = E[X^a; X > 0] + i E[(-X)^a; X < 0].
Complex mellin_split_g(const SampleSet& s, const MellinExponent& a);
Complex mellin_split_g(const DistSpec& spec, const MellinExponent& a,
                       const QuadratureConfig& cfg = {});

// Closed form of g(a) for C(gamma), gamma = r e^{i theta}:
//   r^a (cos(a theta) - sin(a theta) cos(a pi) / sin(a pi) + i sin(a theta) / sin(a pi)),
// continued to a = 0 by sin(a theta) / sin(a pi) -> theta / pi.
Complex g_closed_form(const HalfPlaneParam& gamma, const MellinExponent& a);

// Total weight of observations equal to 0.
double zero_atom_weight(const SampleSet& s);
std::size_t zero_atom_count(const SampleSet& s);

// Integral of f against the Poisson kernel b / (pi ((x - a)^2 + b^2)).
double poisson_smooth(const std::function<double(double)>& f, double a, double b,
                      const QuadratureConfig& cfg = {});

// F_mu(z) = (1/pi) E[1 / (X - z)] for z in the upper half-plane. The
// imaginary part is the Poisson integral of mu at z and is nonnegative.
Complex stieltjes_transform(const SampleSet& s, Complex z);
Complex stieltjes_transform(const DistSpec& spec, Complex z, const QuadratureConfig& cfg = {});

}  // namespace cauchy
