#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cauchy/distributions.hpp"
#include "cauchy/errors.hpp"
#include "cauchy/random.hpp"
#include "cauchy/sample_io.hpp"
#include "support/oracles.hpp"

using namespace cauchy;
using std::numbers::pi;

namespace {

const HalfPlaneParam kI(Complex(0, 1));

}  // namespace

TEST_CASE("Cauchy density") {
  CHECK(cauchy_pdf(0, kI) == doctest::Approx(1 / pi).epsilon(1e-15));
  CHECK(cauchy_pdf(1, kI) == doctest::Approx(1 / (2 * pi)).epsilon(1e-15));
  CHECK(cauchy_pdf(3, HalfPlaneParam(3, 0.25)) == doctest::Approx(1 / (pi * 0.25)).epsilon(1e-15));
}

TEST_CASE("Cauchy quantile and CDF") {
  CHECK(cauchy_quantile(0.5, HalfPlaneParam(-1.5, 2)) == -1.5);
  CHECK(cauchy_quantile(0.75, kI) == doctest::Approx(1).epsilon(1e-15));
  CHECK(cauchy_quantile(0.75, HalfPlaneParam(2, 3)) == doctest::Approx(5).epsilon(1e-15));
  for (double p : {0.0, 1.0, -0.1, 1.5, double(NAN)}) {
    CHECK_THROWS_AS(cauchy_quantile(p, kI), DomainError);
  }
  double worst = 0.0;
  for (const auto& g : {kI, HalfPlaneParam(2, 3), HalfPlaneParam(-7, 0.01)}) {
    for (int k = 1; k <= 99; ++k) {
      const double p = k / 100.0;
      worst = std::max(worst, std::abs(cauchy_cdf(cauchy_quantile(p, g), g) - p));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("circular density") {
  const DiskParam zero(0.0), half(0.5);
  for (double x : {0.0, 1.0, 3.0, 6.0}) CHECK(circular_pdf(x, zero) == doctest::Approx(1 / (2 * pi)));
  CHECK(circular_pdf(0.0, half) == doctest::Approx(3 / (2 * pi)).epsilon(1e-14));
  CHECK(circular_pdf(pi, half) == doctest::Approx(1 / (6 * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(circular_pdf(2 * pi, half), DomainError);
  CHECK_THROWS_AS(circular_pdf(-0.1, half), DomainError);
}

TEST_CASE("mixture parameters and density") {
  CHECK_THROWS_AS(MixtureParams(0.5, kI, kI), DomainError);
  CHECK_THROWS_AS(MixtureParams(0.0, kI, HalfPlaneParam(1, 1)), DomainError);
  CHECK_THROWS_AS(MixtureParams(1.0, kI, HalfPlaneParam(1, 1)), DomainError);

  const MixtureParams sym(0.5, HalfPlaneParam(-1, 1), HalfPlaneParam(1, 1));
  CHECK(mixture_pdf(0, sym) == doctest::Approx(1 / (2 * pi)).epsilon(1e-15));
  const MixtureParams m(0.25, kI, HalfPlaneParam(2, 1));
  CHECK(mixture_pdf(0, m) == doctest::Approx(0.8 / pi).epsilon(1e-15));

  // Swapped labels are canonicalized.
  const MixtureParams swapped(0.25, HalfPlaneParam(2, 1), kI);
  CHECK(swapped.gamma1() == kI);
  CHECK(swapped.gamma2() == HalfPlaneParam(2, 1));
  CHECK(swapped.t() == 0.75);
  const MixtureParams same_re(0.3, HalfPlaneParam(0, 2), HalfPlaneParam(0, 1));
  CHECK(same_re.gamma1() == HalfPlaneParam(0, 1));
  CHECK(same_re.t() == doctest::Approx(0.7));
}

TEST_CASE("property: mixture density is the convex combination of its components") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> re(-4, 4), im(0.1, 3), t(0.01, 0.99), x(-20, 20);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const HalfPlaneParam g1(re(gen), im(gen)), g2(re(gen), im(gen));
    const double tt = t(gen);
    const MixtureParams m(tt, g1, g2);
    const double xv = x(gen);
    const double expect = (1 - tt) * cauchy_pdf(xv, g1) + tt * cauchy_pdf(xv, g2);
    worst = std::max(worst, std::abs(mixture_pdf(xv, m) - expect));
  }
  CHECK(worst <= 1e-15);
}

TEST_CASE("densities integrate to one") {
  // Simpson oracle after x = tan(u): the density times sec^2(u).
  auto total = [](const std::function<double(double)>& p) {
    return oracle::simpson(
               [&](double u) {
                 const double c = std::cos(u);
                 return Complex(p(std::tan(u)) / (c * c), 0);
               },
               -pi / 2 + 1e-12, pi / 2 - 1e-12, 200000)
        .real();
  };
  CHECK(std::abs(total([](double x) { return cauchy_pdf(x, HalfPlaneParam(0.3, 1.7)); }) - 1) <= 1e-10);
  const MixtureParams m(0.3, HalfPlaneParam(-2, 0.5), HalfPlaneParam(1, 2));
  CHECK(std::abs(total([&](double x) { return mixture_pdf(x, m); }) - 1) <= 1e-10);
  const DiskParam w(Complex(0.3, -0.4));
  const double circ =
      oracle::simpson([&](double x) { return Complex(circular_pdf(std::fmod(x, 2 * pi), w), 0); }, 0,
                      2 * pi - 1e-15, 20000)
          .real();
  CHECK(std::abs(circ - 1) <= 1e-10);
}

TEST_CASE("log-likelihood") {
  CHECK(log_likelihood(SampleSet({0.0}), CauchyDist{kI}) == doctest::Approx(-std::log(pi)).epsilon(1e-15));
  const SampleSet two({-1.0, 1.0});
  CHECK(log_likelihood(two, CauchyDist{kI}) == doctest::Approx(-std::log(2 * pi)).epsilon(1e-15));
  CHECK(log_likelihood(two, CauchyDist{kI}) > log_likelihood(two, CauchyDist{HalfPlaneParam(2, 1)}));
  const SampleSet weighted({0.0, 1.0}, {0.25, 0.75});
  CHECK(log_likelihood(weighted, CauchyDist{kI}) ==
        doctest::Approx(0.25 * std::log(1 / pi) + 0.75 * std::log(1 / (2 * pi))));
}

TEST_CASE("sample sets validate their contents") {
  CHECK_THROWS_AS(SampleSet(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(SampleSet({1.0, NAN}), DomainError);
  CHECK_THROWS_AS(SampleSet({1.0, INFINITY}), DomainError);
  CHECK_THROWS_AS(SampleSet({1.0, 2.0}, {0.5}), DomainError);
  CHECK_THROWS_AS(SampleSet({1.0, 2.0}, {0.6, 0.6}), DomainError);
  CHECK_THROWS_AS(SampleSet({1.0, 2.0}, {1.5, -0.5}), DomainError);
  const SampleSet s({1.0, 1.0, 2.0});
  CHECK(s.distinct_count() == 2);
  CHECK_FALSE(s.is_point_mass());
  CHECK(SampleSet({3.0, 3.0}).is_point_mass());
  // A value with zero weight is not part of the support.
  CHECK(SampleSet({3.0, 4.0}, {1.0, 0.0}).is_point_mass());
}

TEST_CASE("weighted quantile") {
  const SampleSet s({4.0, 1.0, 3.0, 2.0});
  CHECK(weighted_quantile(s, 0.5) == 2.5);
  CHECK(weighted_quantile(s, 0.25) == 1.5);
  CHECK(weighted_quantile(SampleSet({1.0, 2.0, 3.0}), 0.5) == 2.0);
}

TEST_CASE("sampling is deterministic and seed dependent") {
  const DistSpec spec = CauchyDist{HalfPlaneParam(1, 2)};
  const SampleSet a = sample(spec, 100, 7), b = sample(spec, 100, 7), c = sample(spec, 100, 8);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
  const SampleSet d = sample(spec, 100, 7, 1);
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), d.values().begin()));
  CHECK_THROWS_AS(sample(spec, 0, 7), DomainError);
}

TEST_CASE("random streams are counter based") {
  RandomStream r(3, 4), again(3, 4);
  for (int k = 0; k < 1000; ++k) {
    const double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(again.uniform() == u);
  }
  CHECK(r.counter() == 1000);
}

TEST_CASE("Monte Carlo checks of the samplers") {
  const SampleSet c = sample(CauchyDist{kI}, 100000, 42);
  const double med = weighted_quantile(c, 0.5);
  CHECK(std::abs(med) <= 0.02);

  const SampleSet u = sample(CircularCauchyDist{DiskParam(0.0)}, 100000, 42);
  Complex mean = 0;
  for (double x : u.values()) {
    CHECK(x >= 0.0);
    CHECK(x < 2 * pi);
    mean += std::polar(1.0, x);
  }
  CHECK(std::abs(mean / 1e5) <= 0.02);

  const MixtureParams m(0.3, HalfPlaneParam(-5, 0.5), HalfPlaneParam(5, 0.5));
  const SampleSet mix = sample(MixtureCauchyDist{m}, 100000, 42);
  std::size_t right = 0;
  for (double x : mix.values()) right += x > 0;
  const double expect = 0.7 * (1 - cauchy_cdf(0, m.gamma1())) + 0.3 * (1 - cauchy_cdf(0, m.gamma2()));
  CHECK(std::abs(right / 1e5 - expect) <= 0.005);
}

TEST_CASE("property: circular draws push forward to a Cauchy law") {
  const DiskParam w(Complex(0.5, 0));
  const SampleSet angles = sample(CircularCauchyDist{w}, 100000, 2024);
  for (Complex g : {Complex(0, 1), Complex(-1, 0.5), Complex(2, 3)}) {
    std::vector<double> ys;
    for (double x : angles.values()) ys.push_back(oracle::mobius_inv(g, std::polar(1.0, x)).real());
    const Complex target = oracle::mobius_inv(g, w.value());
    const double d = oracle::ks_distance(
        ys, [&](double y) { return oracle::cauchy_cdf(y, target.real(), target.imag()); });
    CHECK(d <= 0.01);
  }
}

TEST_CASE("sample CSV reading and writing") {
  std::istringstream in("# header\n1.5\n\n  -2 \n3e2,\n# trailing\n");
  const auto v = parse_sample_csv(in);
  CHECK(v == std::vector<double>{1.5, -2.0, 300.0});
  std::istringstream bad("1\nabc\n");
  CHECK_THROWS_WITH_AS(parse_sample_csv(bad), doctest::Contains("line 2"), DomainError);
  std::istringstream nonfinite("1\ninf\n");
  CHECK_THROWS_AS(parse_sample_csv(nonfinite), DomainError);
  std::istringstream again(format_sample_csv({0.1, -1e-300, 12345.678}));
  CHECK(parse_sample_csv(again) == std::vector<double>{0.1, -1e-300, 12345.678});
}
