#include <cmath>

#include "doctest.h"
#include "dzeta/bernoulli.hpp"

using namespace dzeta;

TEST_CASE("bernoulli numbers match exact rationals") {
  // Exact values from an independent rational computation.
  CHECK(bernoulli(0) == 1.0);
  CHECK(bernoulli(1) == -0.5);
  CHECK(bernoulli(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-16));
  CHECK(bernoulli(12) == doctest::Approx(-691.0 / 2730.0).epsilon(1e-15));
  CHECK(bernoulli(20) == doctest::Approx(-174611.0 / 330.0).epsilon(1e-15));
  CHECK(bernoulli(30) == doctest::Approx(8615841276005.0 / 14322.0).epsilon(1e-15));
  CHECK(bernoulli(40) == doctest::Approx(-1.9296579341940068e+16).epsilon(1e-14));
  CHECK(bernoulli(50) == doctest::Approx(7.500866746076964e+24).epsilon(1e-14));
  CHECK(bernoulli(64) == doctest::Approx(-2.093800591134638e+38).epsilon(1e-14));
  for (int k = 3; k <= bernoulli_max_index; k += 2) CHECK(bernoulli(k) == 0.0);
  CHECK_THROWS_AS(bernoulli(bernoulli_max_index + 1), std::out_of_range);
}

TEST_CASE("bernoulli table is shared") {
  const auto& a = BernoulliTable::instance();
  const auto& b = BernoulliTable::instance();
  CHECK(&a == &b);
  CHECK(a[12] == bernoulli(12));
}

TEST_CASE("pochhammer against gamma ratios") {
  for (double s : {0.3, 1.0, 2.5, 7.25}) {
    for (int k = 0; k <= 9; ++k) {
      const double expect = std::tgamma(s + k) / std::tgamma(s);
      CHECK(pochhammer(cplx(s), k).real() == doctest::Approx(expect).epsilon(1e-13));
    }
  }
  const cplx s(0.5, 3.0);
  cplx p = 1.0;
  for (int k = 0; k < 8; ++k) {
    CHECK(std::abs(pochhammer(s, k) - p) <= 1e-13 * std::abs(p));
    p *= s + static_cast<double>(k);
  }
  CHECK(pochhammer(cplx(-2.0), 3) == cplx(0.0));
}

TEST_CASE("periodic bernoulli polynomials") {
  auto b2 = [](double x) { return x * x - x + 1.0 / 6.0; };
  auto b3 = [](double x) { return x * x * x - 1.5 * x * x + 0.5 * x; };
  CHECK(periodic_bernoulli(3, 0.7) == doctest::Approx(-0.042).epsilon(1e-13));
  CHECK(periodic_bernoulli(3, 2.7) == doctest::Approx(b3(0.7)).epsilon(1e-12));
  CHECK(periodic_bernoulli(3, -0.3) == doctest::Approx(b3(0.7)).epsilon(1e-12));
  CHECK(periodic_bernoulli(2, 5.25) == doctest::Approx(b2(0.25)).epsilon(1e-13));
  CHECK(periodic_bernoulli(1, 0.25) == doctest::Approx(-0.25));
  CHECK_THROWS(periodic_bernoulli(0, 0.5));
  CHECK_THROWS(periodic_bernoulli(periodic_bernoulli_max_order + 1, 0.5));
}

TEST_CASE("sup bound dominates sampled values and is tight for even orders") {
  for (int M = 1; M <= periodic_bernoulli_max_order; ++M) {
    double sampled = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      sampled = std::max(sampled, std::abs(periodic_bernoulli(M, i / 2000.0)));
    }
    CHECK(sampled <= periodic_bernoulli_sup(M) * (1.0 + 1e-12));
    if (M % 2 == 0) {
      CHECK(periodic_bernoulli_sup(M) == doctest::Approx(std::abs(bernoulli(M))).epsilon(1e-12));
    }
  }
}

TEST_CASE("euler-maclaurin coefficients") {
  CHECK(em_coefficient(1) == doctest::Approx(1.0 / 12.0));
  CHECK(em_coefficient(3) == doctest::Approx(-1.0 / 720.0));
  CHECK(em_coefficient(2) == 0.0);
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(10) == 3628800.0);
}
