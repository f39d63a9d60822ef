#pragma once

#include <cmath>
#include <complex>

namespace cauchy::detail {

// Neumaier summation, applied to each component of a complex accumulator.
class CompensatedSum {
public:
  void add(std::complex<double> v) {
    add_component(re_, re_c_, v.real());
    add_component(im_, im_c_, v.imag());
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
  static void add_component(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0;
  double re_c_ = 0.0;
  double im_ = 0.0;
  double im_c_ = 0.0;
};

}  // namespace cauchy::detail
