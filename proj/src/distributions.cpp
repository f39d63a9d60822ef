#include "cauchy/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cauchy/errors.hpp"
#include "cauchy/random.hpp"
#include "compensated_sum.hpp"
#include "overloaded.hpp"

namespace cauchy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

using detail::Overloaded;

}  // namespace

MixtureParams::MixtureParams(double t, HalfPlaneParam gamma1, HalfPlaneParam gamma2)
    : t_(t), gamma1_(gamma1), gamma2_(gamma2) {
  if (!(t > 0.0 && t < 1.0)) {
    throw DomainError("mixture weight must lie in (0, 1), got " + format_real(t));
  }
  if (gamma1 == gamma2) throw DomainError("mixture components must be distinct");
  if (lex_less(gamma2_.value(), gamma1_.value())) {
    std::swap(gamma1_, gamma2_);
    t_ = 1.0 - t_;
  }
}

SampleSet::SampleSet(std::vector<double> values)
    : SampleSet(values, std::vector<double>(values.size(),
                                            values.empty() ? 0.0 : 1.0 / values.size())) {}

SampleSet::SampleSet(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.empty()) throw DomainError("sample must contain at least one observation");
  if (values_.size() != weights_.size()) {
    throw DomainError("sample values and weights differ in length");
  }
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("non-finite observation at index " + std::to_string(i));
    }
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw DomainError("negative or non-finite weight at index " + std::to_string(i));
    }
    total.add(weights_[i]);
  }
  const double sum = total.value().real();
  if (std::abs(sum - 1.0) > 1e-12) {
    throw DomainError("sample weights must sum to 1, got " + format_real(sum));
  }
}

std::size_t SampleSet::distinct_count() const {
  std::vector<double> sorted;
  sorted.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (weights_[i] > 0.0) sorted.push_back(values_[i]);
  }
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

double cauchy_pdf(double x, const HalfPlaneParam& gamma) {
  return gamma.scale() / (kPi * std::norm(x - gamma.value()));
}

double cauchy_cdf(double x, const HalfPlaneParam& gamma) {
  return 0.5 + std::atan((x - gamma.location()) / gamma.scale()) / kPi;
}

double cauchy_quantile(double p, const HalfPlaneParam& gamma) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile level must lie in (0, 1), got " + format_real(p));
  }
  return gamma.location() + gamma.scale() * std::tan(kPi * (p - 0.5));
}

double circular_pdf(double angle, const DiskParam& w) {
  if (!(angle >= 0.0 && angle < kTwoPi)) {
    throw DomainError("angle must lie in [0, 2pi), got " + format_real(angle));
  }
  const Complex wv = w.value();
  return (1.0 - std::norm(wv)) / (kTwoPi * std::norm(std::polar(1.0, angle) - wv));
}

double mixture_pdf(double x, const MixtureParams& m) {
  return (1.0 - m.t()) * cauchy_pdf(x, m.gamma1()) + m.t() * cauchy_pdf(x, m.gamma2());
}

double pdf(const DistSpec& spec, double x) {
  return std::visit(Overloaded{
                        [x](const CauchyDist& d) { return cauchy_pdf(x, d.gamma); },
                        [x](const CircularCauchyDist& d) { return circular_pdf(x, d.w); },
                        [x](const MixtureCauchyDist& d) { return mixture_pdf(x, d.params); },
                    },
                    spec);
}

SampleSet sample(const DistSpec& spec, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  RandomStream rng(seed, stream);
  std::vector<double> values(n);
  std::visit(Overloaded{
                 [&](const CauchyDist& d) {
                   for (auto& v : values) v = cauchy_quantile(rng.uniform(), d.gamma);
                 },
                 [&](const CircularCauchyDist& d) {
                   const Complex w = d.w.value();
                   for (auto& v : values) {
                     const Complex u = std::polar(1.0, kTwoPi * rng.uniform());
                     const Complex z = (u + w) / (1.0 + std::conj(w) * u);
                     double angle = std::arg(z);
                     if (angle < 0.0) angle += kTwoPi;
                     if (angle >= kTwoPi) angle -= kTwoPi;
                     v = angle;
                   }
                 },
                 [&](const MixtureCauchyDist& d) {
                   const MixtureParams& m = d.params;
                   for (auto& v : values) {
                     const bool second = rng.uniform() < m.t();
                     v = cauchy_quantile(rng.uniform(), second ? m.gamma2() : m.gamma1());
                   }
                 },
             },
             spec);
  return SampleSet(std::move(values));
}

double log_likelihood(const SampleSet& s, const DistSpec& spec) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.weights()[i] == 0.0) continue;
    total += s.weights()[i] * std::log(pdf(spec, s.values()[i]));
  }
  return total;
}

double weighted_quantile(const SampleSet& s, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.values()[a] < s.values()[b]; });
  double cumulative = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double w = s.weights()[order[k]];
    if (w == 0.0) continue;
    cumulative += w;
    if (std::abs(cumulative - p) <= 1e-12) {
      for (std::size_t j = k + 1; j < order.size(); ++j) {
        if (s.weights()[order[j]] > 0.0) {
          return 0.5 * (s.values()[order[k]] + s.values()[order[j]]);
        }
      }
      return s.values()[order[k]];
    }
    if (cumulative > p) return s.values()[order[k]];
  }
  return s.values()[order.back()];
}

}  // namespace cauchy
