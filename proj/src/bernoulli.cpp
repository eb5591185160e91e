#include "dzeta/bernoulli.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dzeta {

namespace {

// Just enough exact arithmetic for the recurrence up to index 30: numerators
// stay below ~1e27 with denominators reduced at each step.
struct Rational {
  __int128 num = 0;
  __int128 den = 1;
};

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Rational normalized(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Rational add(const Rational& a, const Rational& b) {
  const __int128 g = gcd128(a.den, b.den);
  const __int128 lhs = a.num * (b.den / g);
  const __int128 rhs = b.num * (a.den / g);
  return normalized(lhs + rhs, a.den / g * b.den);
}

Rational scale(const Rational& a, __int128 factor) {
  const __int128 g = gcd128(factor, a.den);
  return normalized(a.num * (factor / g), a.den / g);
}

double to_double(const Rational& r) {
  // Both parts fit comfortably in long double's exponent range; the quotient
  // is rounded once more to double.
  return static_cast<double>(static_cast<long double>(r.num) / static_cast<long double>(r.den));
}

__int128 binomial(int n, int k) {
  __int128 c = 1;
  for (int j = 1; j <= k; ++j) {
    c = c * (n - k + j) / j;
  }
  return c;
}

double zeta_even(int n) {
  // zeta(n) for n >= 32 converges after a handful of terms.
  double s = 0.0;
  for (int k = 60; k >= 1; --k) s += std::pow(static_cast<double>(k), -n);
  return s;
}

}  // namespace

BernoulliTable::BernoulliTable() {
  std::array<Rational, bernoulli_exact_index + 1> exact{};
  exact[0] = {1, 1};
  for (int k = 1; k <= bernoulli_exact_index; ++k) {
    Rational acc{0, 1};
    for (int j = 0; j < k; ++j) {
      acc = add(acc, scale(exact[static_cast<std::size_t>(j)], binomial(k + 1, j)));
    }
    exact[static_cast<std::size_t>(k)] = normalized(-acc.num, acc.den * (k + 1));
  }
  for (int k = 0; k <= bernoulli_exact_index; ++k) {
    values_[static_cast<std::size_t>(k)] = to_double(exact[static_cast<std::size_t>(k)]);
  }
  for (int k = bernoulli_exact_index + 1; k <= bernoulli_max_index; ++k) {
    if (k % 2 == 1) {
      values_[static_cast<std::size_t>(k)] = 0.0;
      continue;
    }
    const int half = k / 2;
    const double sign = (half % 2 == 1) ? 1.0 : -1.0;
    values_[static_cast<std::size_t>(k)] =
        sign * 2.0 * factorial(k) * zeta_even(k) / std::pow(2.0 * pi, k);
  }
}

const BernoulliTable& BernoulliTable::instance() {
  static const BernoulliTable table;
  return table;
}

double bernoulli(int k) {
  if (k < 0 || k > bernoulli_max_index) {
    throw std::out_of_range("bernoulli: index " + std::to_string(k) + " outside 0.." +
                            std::to_string(bernoulli_max_index));
  }
  return BernoulliTable::instance()[k];
}

cplx pochhammer(cplx s, int k) {
  if (k < 0 || k > bernoulli_max_index) {
    throw std::out_of_range("pochhammer: order " + std::to_string(k) + " outside 0.." +
                            std::to_string(bernoulli_max_index));
  }
  cplx p = 1.0;
  for (int j = 0; j < k; ++j) p *= s + static_cast<double>(j);
  return p;
}

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

double periodic_bernoulli(int M, double x) {
  if (M < 1 || M > periodic_bernoulli_max_order) {
    throw std::out_of_range("periodic_bernoulli: order " + std::to_string(M) + " outside 1.." +
                            std::to_string(periodic_bernoulli_max_order));
  }
  const double u = x - std::floor(x);
  // B_M(u) = sum_j C(M, j) B_j u^{M-j}, evaluated by Horner in u.
  const auto& table = BernoulliTable::instance();
  double acc = 0.0;
  for (int j = 0; j <= M; ++j) {
    acc = acc * u + static_cast<double>(binomial(M, j)) * table[j];
  }
  return acc;
}

double periodic_bernoulli_sup(int M) {
  if (M < 1 || M > periodic_bernoulli_max_order) {
    throw std::out_of_range("periodic_bernoulli_sup: order " + std::to_string(M) +
                            " outside 1.." + std::to_string(periodic_bernoulli_max_order));
  }
  static const auto table = [] {
    std::array<double, periodic_bernoulli_max_order + 1> t{};
    t[1] = 0.5;
    for (int m = 2; m <= periodic_bernoulli_max_order; ++m) {
      // Even orders peak at the integers.
      if (m % 2 == 0) {
        t[m] = std::abs(bernoulli(m));
        continue;
      }
      // Odd orders: 2 m! zeta(m) / (2 pi)^m with zeta(m) bounded by a
      // partial sum plus the integral tail.
      double z = 0.0;
      for (int n = 1000; n >= 1; --n) z += std::pow(static_cast<double>(n), -m);
      z += std::pow(1000.0, 1.0 - m) / (m - 1);
      t[m] = 2.0 * factorial(m) * z / std::pow(2.0 * pi, m);
    }
    return t;
  }();
  return table[M];
}

double em_coefficient(int k) { return bernoulli(k + 1) / factorial(k + 1); }

}  // namespace dzeta
