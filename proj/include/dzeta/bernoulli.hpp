#pragma once

#include <array>
#include <span>

#include "dzeta/types.hpp"

namespace dzeta {

inline constexpr int bernoulli_max_index = 64;
inline constexpr int bernoulli_exact_index = 30;
inline constexpr int periodic_bernoulli_max_order = 15;

/// Bernoulli numbers B_0..B_64 in the B_1 = -1/2 convention.
///
/// Indices up to 30 come from the exact rational recurrence
/// sum_{j<=k} C(k+1, j) B_j = 0, rounded once; larger even indices use
/// B_2k = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}. Built on first use and
/// shared read-only afterwards.
class BernoulliTable {
 public:
  static const BernoulliTable& instance();

  std::span<const double> values() const { return values_; }
  double operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }

 private:
  BernoulliTable();
  std::array<double, bernoulli_max_index + 1> values_{};
};

/// B_k; throws std::out_of_range past bernoulli_max_index.
double bernoulli(int k);

/// Rising factorial s (s+1) ... (s+k-1); (s)_0 = 1.
cplx pochhammer(cplx s, int k);

/// B_M({x}) with {x} the fractional part, for 1 <= M <= 15.
double periodic_bernoulli(int M, double x);

/// sup_x |B_M({x})|, via |B_M(x)| <= 2 M! zeta(M) / (2 pi)^M for M >= 2.
double periodic_bernoulli_sup(int M);

/// B_{k+1} / (k+1)!, the Euler-Maclaurin coefficient of (s)_k N^{-s-k}.
double em_coefficient(int k);

/// k! as a double, k <= 170.
double factorial(int k);

}  // namespace dzeta
