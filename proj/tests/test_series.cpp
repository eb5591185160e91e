#include <cmath>
#include <vector>

#include "doctest.h"
#include "dzeta/dzeta.hpp"
#include "dzeta/series.hpp"

using namespace dzeta;

namespace {

// Divisors m of k with m^2 < k by trial division.
std::vector<std::int32_t> trial(std::int64_t k) {
  std::vector<std::int32_t> out;
  for (std::int64_t m = 1; m * m < k; ++m) {
    if (k % m == 0) out.push_back(static_cast<std::int32_t>(m));
  }
  return out;
}

// Independent double loop over pairs m < n with mn <= K.
double box_double_loop(double sigma1, double sigma2, std::int64_t K) {
  std::vector<double> inner(static_cast<std::size_t>(K) + 1, 0.0);
  for (std::int64_t m = 1; m * (m + 1) <= K; ++m) {
    for (std::int64_t n = m + 1; m * n <= K; ++n) {
      inner[static_cast<std::size_t>(m * n)] +=
          std::pow(static_cast<double>(m), -sigma1) * std::pow(static_cast<double>(n), -sigma2);
    }
  }
  double s = 0.0;
  for (std::int64_t k = K; k >= 2; --k) s += inner[static_cast<std::size_t>(k)] * inner[static_cast<std::size_t>(k)];
  return s;
}

}  // namespace

TEST_CASE("divisor sieve matches trial division") {
  const DivisorTable table(10000);
  CHECK(table.limit() == 10000);
  for (std::int64_t k = 2; k <= 10000; ++k) {
    const auto row = table.row(k);
    const std::vector<std::int32_t> expect = trial(k);
    REQUIRE(std::vector<std::int32_t>(row.begin(), row.end()) == expect);
  }
  CHECK(table.row(1).empty());
  CHECK(table.row(10001).empty());
  const auto r36 = table.row(36);
  CHECK(std::vector<std::int32_t>(r36.begin(), r36.end()) == std::vector<std::int32_t>{1, 2, 3, 4});
}

TEST_CASE("box series by hand") {
  // k = 2, 3, 4 each have the single pair m = 1: 1/4 + 1/9 + 1/16.
  const SeriesResult r = series_z2box(1.0, 1.0, 4);
  CHECK(r.value == doctest::Approx(61.0 / 144.0).epsilon(1e-15));
  CHECK(r.terms_used == 4);
  // k = 6 adds the pair (2, 3) to (1, 6): (1/6 + 1/6)^2.
  CHECK(series_z2box(1.0, 1.0, 6).value ==
        doctest::Approx(61.0 / 144.0 + 1.0 / 25.0 + 1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("box series against an independent double loop") {
  const SeriesResult r = series_z2box(1.5, 0.8, 1000000);
  CHECK(r.value == doctest::Approx(box_double_loop(1.5, 0.8, 1000000)).epsilon(1e-13));
  CHECK(std::isfinite(r.tail_bound));
  CHECK(r.tail_bound > 0.0);
}

TEST_CASE("box series dominates the double zeta at doubled arguments") {
  // Each square contains its diagonal terms, so the truncations compare for every K.
  for (const std::int64_t K : {10, 100, 1000, 10000}) {
    double diag = 0.0;
    for (std::int64_t m = 1; m * (m + 1) <= K; ++m) {
      for (std::int64_t n = m + 1; m * n <= K; ++n) {
        diag += std::pow(static_cast<double>(m * n), -2.0);
      }
    }
    CHECK(series_z2box(1.0, 1.0, K).value >= diag);
  }
  CHECK(series_z2box(1.0, 1.0, 100000).value > std::pow(pi, 4) / 120.0);
}

TEST_CASE("first series against direct summation") {
  // Reference values: sum_m m^{-2 sigma1} |zeta(s2, m + 1)|^2 at 30 digits.
  const SeriesResult a = series_z21(4.0, 2.0, 1e-12);
  CHECK(a.value == doctest::Approx(0.426959687360119009981514951832).epsilon(1e-12));
  CHECK(a.tail_bound <= 1e-12);
  CHECK(a.value > 0.0);
  const SeriesResult b = series_z21(2.0, 2.0, 1e-9);
  CHECK(std::abs(b.value - 0.469987030698537141687272062757) <= b.tail_bound + 1e-14);
  const SeriesResult c = series_z21(3.0, {1.5, 2.0}, 1e-9);
  CHECK(std::abs(c.value - 0.189352730799761310078197845857) <= c.tail_bound + 1e-14);

  // Same series by hand: sum m^-2 (zeta(2) - H_m^(2))^2 over m <= 3.
  const double z2 = pi * pi / 6.0;
  double hand = 0.0;
  double h = 0.0;
  for (int m = 1; m <= 3; ++m) {
    h += 1.0 / (m * m);
    hand += (z2 - h) * (z2 - h) / (m * m);
  }
  CHECK(series_z21_terms(2.0, 2.0, 3).value == doctest::Approx(hand).epsilon(1e-14));
}

TEST_CASE("second series against direct summation") {
  const SeriesResult a = series_z22(2.0, 4.0, 1e-12);
  CHECK(a.value == doctest::Approx(0.096707075709282967659274859753).epsilon(1e-12));
  const SeriesResult b = series_z22({2.0, 5.0}, 4.0, 1e-12);
  CHECK(b.value == doctest::Approx(0.0753972227122547538461826384279).epsilon(1e-12));
  CHECK(b.value <= a.value);
  // n = 2, 3: 1/16 + (5/4)^2 / 81.
  CHECK(series_z22_terms(2.0, 4.0, 3).value ==
        doctest::Approx(1.0 / 16.0 + 25.0 / 16.0 / 81.0).epsilon(1e-14));
}

TEST_CASE("partial sums are monotone and tails are honest") {
  CHECK(series_z21_terms(2.0, 2.0, 1000).value <= series_z21_terms(2.0, 2.0, 10000).value);
  CHECK(series_z22_terms({1.2, 3.0}, 2.0, 1000).value <=
        series_z22_terms({1.2, 3.0}, 2.0, 10000).value);
  CHECK(series_z2box(0.9, 0.9, 1000).value <= series_z2box(0.9, 0.9, 10000).value);

  struct P {
    double a, b;
  };
  // z21 at (2 sigma1, sigma2 + i t2), z22 at (sigma1 + i t, 2 sigma2), z2box at (sigma1, sigma2).
  for (const P p : {P{3.0, 1.5}, P{2.0, 2.0}, P{4.0, 0.5}, P{1.6, 3.0}}) {
    const SeriesResult x = series_z21_terms(p.a, {p.b, 1.0}, 2000);
    const SeriesResult y = series_z21_terms(p.a, {p.b, 1.0}, 4000);
    CAPTURE(p.a);
    CAPTURE(p.b);
    CHECK(y.value - x.value <= x.tail_bound);
  }
  for (const P p : {P{1.0, 2.2}, P{2.0, 1.5}, P{0.8, 3.0}}) {
    const SeriesResult x = series_z22_terms({p.a, 2.0}, p.b, 2000);
    const SeriesResult y = series_z22_terms({p.a, 2.0}, p.b, 4000);
    CHECK(y.value - x.value <= x.tail_bound);
  }
  for (const P p : {P{1.5, 1.5}, P{2.0, 1.2}, P{1.0, 2.0}}) {
    const SeriesResult x = series_z2box(p.a, p.b, 20000);
    const SeriesResult y = series_z2box(p.a, p.b, 40000);
    CHECK(y.value - x.value <= x.tail_bound);
  }
}

TEST_CASE("divergent regions are refused") {
  CHECK_THROWS_AS(series_z21(2.0, 0.4, 1e-8), DomainError);  // sigma1 + sigma2 = 1.4
  CHECK_THROWS_AS(series_z21(4.0, 1.0, 1e-8), DomainError);
  CHECK_THROWS_AS(series_z22(2.0, 1.0, 1e-8), DomainError);  // sigma2 = 1/2
  CHECK_THROWS_AS(series_z22(0.5, 1.8, 1e-8), DomainError);  // sigma1 + sigma2 = 1.4
  CHECK_THROWS_AS(series_z2box(2.0, 0.5), DomainError);
  CHECK_THROWS_AS(series_z2box(0.4, 0.6), DomainError);
  CHECK_THROWS_AS(series_z2box(1.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(series_z21(4.0, 2.0, 0.0), DomainError);
  // Near the boundary the tail cannot reach a tight tolerance under the cap.
  CHECK_THROWS_AS(series_z21(2.0, 0.52, 1e-14), AccuracyError);
  // The tail exponent does not beat 1 when 2 sigma2 - 0.05 <= 1.
  CHECK(std::isinf(series_z2box(2.0, 0.51, 1000).tail_bound));
}

TEST_CASE("region checks") {
  CHECK(region_check(SeriesKind::z2box, 0.4, 0.7));
  CHECK(!region_check(SeriesKind::z2box, 2.0, 0.5));
  CHECK(!region_check(SeriesKind::z2box, 0.5, 0.5));
  CHECK(region_check(SeriesKind::z22, 0.8, 0.8));
  CHECK(!region_check(SeriesKind::z22, 1.0, 0.5));
  CHECK(!region_check(SeriesKind::z22, 0.7, 0.8));
  CHECK(region_check(SeriesKind::z21, 1.0, 0.6));
  CHECK(!region_check(SeriesKind::z21, 1.0, 0.5));
  CHECK(!region_check(SeriesKind::z21, 1.0, 1.0, 0.0));  // s2 = 1
  CHECK(region_check(SeriesKind::z21, 1.0, 1.0, 2.0));
}

TEST_CASE("series names") {
  CHECK(parse_series("z21") == SeriesKind::z21);
  CHECK(parse_series("z22") == SeriesKind::z22);
  CHECK(parse_series("z2box") == SeriesKind::z2box);
  CHECK_THROWS_AS(parse_series("z23"), DomainError);
  for (const SeriesKind k : {SeriesKind::z21, SeriesKind::z22, SeriesKind::z2box}) {
    CHECK(parse_series(to_string(k)) == k);
  }
}
