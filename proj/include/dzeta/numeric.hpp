#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "dzeta/types.hpp"

namespace dzeta {

/// Neumaier-compensated accumulator for complex sums of many terms.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(cplx init) : re_(init.real()), im_(init.imag()) {}

  void add(cplx x) {
    add_part(re_, cre_, x.real());
    add_part(im_, cim_, x.imag());
    abs_ += std::abs(x);
  }
  CompensatedSum& operator+=(cplx x) {
    add(x);
    return *this;
  }
  CompensatedSum& operator-=(cplx x) {
    add(-x);
    return *this;
  }

  cplx value() const { return {re_ + cre_, im_ + cim_}; }
  /// Sum of the moduli of everything added, for rounding estimates.
  double magnitude() const { return abs_; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0, im_ = 0.0, cre_ = 0.0, cim_ = 0.0, abs_ = 0.0;
};

/// x^{-s} for real x > 0.
inline cplx pow_neg(double x, cplx s) { return std::exp(-s * std::log(x)); }

/// (e^z - 1) / z, accurate near z = 0.
inline cplx expm1_over(cplx z) {
  if (std::abs(z) < 1e-3) {
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
  }
  return (std::exp(z) - 1.0) / z;
}

/// Bound on sum_{n > N} n^{-a} by the integral comparison, a > 1.
inline double power_tail_bound(double N, double a) { return std::pow(N, 1.0 - a) / (a - 1.0); }

/// Rounding budget per unit of accumulated magnitude.
inline constexpr double rounding_unit = 1e-15;

/// Relative rounding of x^{-s} = exp(-s log x) for x <= X: the exponent
/// carries an absolute error of about |s log X| ulps.
inline double power_rounding(cplx s, double X) {
  return rounding_unit + 0x1p-52 * std::abs(s) * std::log(std::max(X, 1.0));
}

}  // namespace dzeta
