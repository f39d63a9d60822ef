#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace cauchy {

using Complex = std::complex<double>;

// A point of the open upper half-plane: location + i * scale, scale > 0.
// This is the Cauchy parameter in the McCullagh parametrization.
class HalfPlaneParam {
public:
  explicit HalfPlaneParam(Complex value);
  HalfPlaneParam(double location, double scale) : HalfPlaneParam(Complex(location, scale)) {}

  Complex value() const { return value_; }
  double location() const { return value_.real(); }
  double scale() const { return value_.imag(); }

  friend bool operator==(const HalfPlaneParam&, const HalfPlaneParam&) = default;

private:
  Complex value_;
};

// A point of the open unit disk; the circular-Cauchy parameter.
class DiskParam {
public:
  explicit DiskParam(Complex value);

  Complex value() const { return value_; }

  friend bool operator==(const DiskParam&, const DiskParam&) = default;

private:
  Complex value_;
};

// log|z| + i*theta with theta in (-pi, pi]. Negative reals get +pi regardless
// of the sign of a zero imaginary part. Throws DomainError for z == 0.
Complex principal_log(Complex z);

// exp(a * principal_log(z)), with 0^a := 0 for every a (including a == 0).
Complex cpow(Complex z, Complex a);

// z -> (z - gamma) / (z - conj(gamma)), closed upper half-plane onto the
// closed disk; gamma goes to 0 and the real line onto the circle minus {1}.
Complex mobius_to_disk(const HalfPlaneParam& gamma, Complex z);

// Inverse map w -> (gamma - conj(gamma) w) / (1 - w). Throws at w == 1.
Complex mobius_to_halfplane(const HalfPlaneParam& gamma, Complex w);

// Complex literals: "a+bi", "a-bi", "bi", "i", "a", whitespace allowed.
Complex parse_complex(std::string_view text);

// Shortest round-trip decimal form, e.g. "1.5-2i", "0+1i".
std::string format_complex(Complex z);
std::string format_real(double x);

// Parses a finite real number, the whole string must be consumed.
double parse_real(std::string_view text);

}  // namespace cauchy
