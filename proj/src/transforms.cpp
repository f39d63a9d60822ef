#include "cauchy/transforms.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "cauchy/errors.hpp"
#include "compensated_sum.hpp"

namespace cauchy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex checked_ratio(Complex num, Complex den, const char* what) {
  if (den == Complex(0.0, 0.0) || !std::isfinite(std::abs(den))) {
    throw NumericalError(std::string(what) + ": denominator expectation vanished");
  }
  return num / den;
}

QuadratureConfig with_split_at_zero(const QuadratureConfig& cfg) {
  QuadratureConfig out = cfg;
  out.split_points.push_back(0.0);
  return out;
}

void require_real_line(const DistSpec& spec, const char* what) {
  if (std::holds_alternative<CircularCauchyDist>(spec)) {
    throw DomainError(std::string(what) + " needs a law on the real line");
  }
}

}  // namespace

void validate_angles(const SampleSet& angles) {
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double x = angles.values()[i];
    if (!(x >= 0.0 && x < kTwoPi)) {
      throw DomainError("angle at index " + std::to_string(i) + " is outside [0, 2pi)");
    }
    if (x == 0.0 && angles.weights()[i] > 0.0) {
      throw DomainError("angle at index " + std::to_string(i) +
                        " is exactly 0; the circular characterization assumes P(X != 0) = 1");
    }
  }
}

MellinExponent::MellinExponent(Complex a, bool allow_negative) : a_(a) {
  const double lo = allow_negative ? -1.0 : 0.0;
  const bool lo_ok = allow_negative ? a.real() > lo : a.real() >= lo;
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !lo_ok || !(a.real() < 1.0)) {
    throw DomainError("Mellin exponent needs " +
                      std::string(allow_negative ? "-1 < Re(a) < 1" : "0 <= Re(a) < 1") +
                      ", got " + format_complex(a));
  }
}

std::vector<MellinExponent> default_exponent_grid() {
  std::vector<MellinExponent> grid;
  for (int k = 1; k <= 9; ++k) grid.emplace_back(k / 10.0);
  return grid;
}

std::vector<MellinExponent> low_exponent_grid() {
  std::vector<MellinExponent> grid;
  for (int k = 1; k <= 9; ++k) grid.emplace_back(0.05 * k);
  return grid;
}

Complex mobius_stat(const SampleSet& s, const HalfPlaneParam& gamma) {
  const Complex pole = std::conj(gamma.value());
  detail::CompensatedSum num;
  detail::CompensatedSum den;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.values()[i];
    const Complex u = s.weights()[i] / (x - pole);
    num.add(x * u);
    den.add(u);
  }
  return checked_ratio(num.value(), den.value(), "mobius_stat");
}

Complex mobius_stat(const DistSpec& spec, const HalfPlaneParam& gamma, const QuadratureConfig& cfg) {
  require_real_line(spec, "mobius_stat");
  const Complex pole = std::conj(gamma.value());
  const Complex num = expectation([&](double x) { return x / (x - pole); }, spec, cfg);
  const Complex den = expectation([&](double x) { return 1.0 / (x - pole); }, spec, cfg);
  return checked_ratio(num, den, "mobius_stat");
}

Complex mobius_stat(const Density& density, double center, double scale,
                    const HalfPlaneParam& gamma, const QuadratureConfig& cfg) {
  const Complex pole = std::conj(gamma.value());
  const Complex num =
      expectation_density([&](double x) { return x / (x - pole); }, density, center, scale, cfg);
  const Complex den =
      expectation_density([&](double x) { return 1.0 / (x - pole); }, density, center, scale, cfg);
  return checked_ratio(num, den, "mobius_stat");
}

Complex circular_stat(const SampleSet& angles, const DiskParam& eta) {
  validate_angles(angles);
  const Complex e = eta.value();
  detail::CompensatedSum num;
  detail::CompensatedSum den;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const Complex z = std::polar(1.0, angles.values()[i]);
    const Complex u = angles.weights()[i] / (1.0 - e * z);
    num.add(z * u);
    den.add(u);
  }
  return checked_ratio(num.value(), den.value(), "circular_stat");
}

Complex circular_stat(const DistSpec& spec, const DiskParam& eta, const QuadratureConfig& cfg) {
  if (!std::holds_alternative<CircularCauchyDist>(spec)) {
    throw DomainError("circular_stat needs a law on the circle");
  }
  const Complex e = eta.value();
  const Complex num = expectation(
      [&](double x) {
        const Complex z = std::polar(1.0, x);
        return z / (1.0 - e * z);
      },
      spec, cfg);
  const Complex den =
      expectation([&](double x) { return 1.0 / (1.0 - e * std::polar(1.0, x)); }, spec, cfg);
  return checked_ratio(num, den, "circular_stat");
}

Complex mellin_empirical(const SampleSet& s, const MellinExponent& a) {
  detail::CompensatedSum sum;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sum.add(s.weights()[i] * cpow(s.values()[i], a.value()));
  }
  return sum.value();
}

Complex mellin_transform(const DistSpec& spec, const MellinExponent& a, const QuadratureConfig& cfg) {
  require_real_line(spec, "mellin_transform");
  return expectation([&](double x) { return cpow(x, a.value()); }, spec, with_split_at_zero(cfg));
}

std::vector<Complex> mellin_empirical_grid(const SampleSet& s, std::span<const MellinExponent> grid) {
  std::vector<double> log_abs(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.values()[i];
    log_abs[i] = x == 0.0 ? 0.0 : std::log(std::abs(x));
  }
  std::vector<Complex> out;
  out.reserve(grid.size());
  for (const MellinExponent& exponent : grid) {
    const Complex a = exponent.value();
    if (exponent.is_real()) {
      double positive = 0.0;
      double negative = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = s.values()[i];
        if (x == 0.0) continue;
        const double term = s.weights()[i] * std::exp(a.real() * log_abs[i]);
        (x > 0.0 ? positive : negative) += term;
      }
      out.push_back(positive + negative * std::polar(1.0, a.real() * kPi));
    } else {
      out.push_back(mellin_empirical(s, exponent));
    }
  }
  return out;
}

Complex mellin_split_g(const SampleSet& s, const MellinExponent& a) {
  detail::CompensatedSum positive;
  detail::CompensatedSum negative;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.values()[i];
    if (x > 0.0) {
      positive.add(s.weights()[i] * cpow(x, a.value()));
    } else if (x < 0.0) {
      negative.add(s.weights()[i] * cpow(-x, a.value()));
    }
  }
  return positive.value() + Complex(0.0, 1.0) * negative.value();
}

Complex mellin_split_g(const DistSpec& spec, const MellinExponent& a, const QuadratureConfig& cfg) {
  require_real_line(spec, "mellin_split_g");
  const Complex exponent = a.value();
  return expectation(
      [&](double x) -> Complex {
        if (x > 0.0) return cpow(x, exponent);
        if (x < 0.0) return Complex(0.0, 1.0) * cpow(-x, exponent);
        return {0.0, 0.0};
      },
      spec, with_split_at_zero(cfg));
}

Complex g_closed_form(const HalfPlaneParam& gamma, const MellinExponent& a) {
  const double r = std::abs(gamma.value());
  const double theta = std::arg(gamma.value());
  const Complex av = a.value();
  if (av == Complex(0.0, 0.0)) return {1.0 - theta / kPi, theta / kPi};
  const Complex sin_api = std::sin(av * kPi);
  if (sin_api == Complex(0.0, 0.0)) throw NumericalError("g_closed_form: sin(a pi) vanished");
  const Complex ratio = std::sin(av * theta) / sin_api;
  const Complex ra = std::exp(av * std::log(r));
  return ra * (std::cos(av * theta) - ratio * std::cos(av * kPi) + Complex(0.0, 1.0) * ratio);
}

double zero_atom_weight(const SampleSet& s) {
  double w = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.values()[i] == 0.0) w += s.weights()[i];
  }
  return w;
}

std::size_t zero_atom_count(const SampleSet& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.values()[i] == 0.0 && s.weights()[i] > 0.0) ++n;
  }
  return n;
}

double poisson_smooth(const std::function<double(double)>& f, double a, double b,
                      const QuadratureConfig& cfg) {
  if (!(b > 0.0)) throw DomainError("poisson_smooth needs b > 0, got " + format_real(b));
  const DistSpec kernel = CauchyDist{HalfPlaneParam(a, b)};
  return expectation([&](double x) { return Complex(f(x), 0.0); }, kernel, cfg).real();
}

Complex stieltjes_transform(const SampleSet& s, Complex z) {
  if (!(z.imag() > 0.0)) {
    throw DomainError("stieltjes_transform needs Im(z) > 0, got " + format_complex(z));
  }
  detail::CompensatedSum sum;
  for (std::size_t i = 0; i < s.size(); ++i) sum.add(s.weights()[i] / (s.values()[i] - z));
  return sum.value() / kPi;
}

Complex stieltjes_transform(const DistSpec& spec, Complex z, const QuadratureConfig& cfg) {
  if (!(z.imag() > 0.0)) {
    throw DomainError("stieltjes_transform needs Im(z) > 0, got " + format_complex(z));
  }
  require_real_line(spec, "stieltjes_transform");
  return expectation([&](double x) { return 1.0 / (x - z); }, spec, cfg) / kPi;
}

}  // namespace cauchy
