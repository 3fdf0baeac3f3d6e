#pragma once

#include <cmath>
#include <complex>

namespace padic {

/// Neumaier-compensated accumulator for complex sums.
class CompensatedSum {
 public:
  void add(std::complex<double> z) {
    step(re_, cre_, z.real());
    step(im_, cim_, z.imag());
  }
  std::complex<double> value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void step(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

}  // namespace padic
