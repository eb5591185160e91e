#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dzeta/types.hpp"

namespace dzeta {

/// Partial sum of a nonnegative series. tail_bound covers the omitted terms
/// plus the evaluation error of the terms that were summed.
struct SeriesResult {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms_used = 0;
};

enum class SeriesKind { z21, z22, z2box };

std::string_view to_string(SeriesKind which);
SeriesKind parse_series(std::string_view name);

/// Divisors m of k with m^2 < k, for 2 <= k <= K, in compressed rows.
class DivisorTable {
 public:
  explicit DivisorTable(std::int64_t K);

  std::int64_t limit() const { return K_; }
  /// Ascending divisors of k below sqrt(k); empty for k < 2 or k > limit().
  std::span<const std::int32_t> row(std::int64_t k) const;

 private:
  std::int64_t K_;
  std::vector<std::int64_t> offsets_;
  std::vector<std::int32_t> divisors_;
};

inline constexpr std::int64_t default_series_terms = 100'000;
inline constexpr std::int64_t default_box_terms = 1'000'000;
inline constexpr std::int64_t series_term_cap = 50'000'000;

/// sum_{m>=1} m^{-2 sigma1} |zeta(s2) - sum_{n<=m} n^{-s2}|^2 with sigma1 =
/// two_sigma1 / 2, summed until tail_bound <= tol. Requires sigma1 + sigma2 > 3/2
/// and s2 != 1; throws AccuracyError past series_term_cap.
SeriesResult series_z21(double two_sigma1, ComplexPoint s2, double tol);
/// Same series truncated at m <= K.
SeriesResult series_z21_terms(double two_sigma1, ComplexPoint s2, std::int64_t K);

/// sum_{n>=2} |sum_{m<n} m^{-s1}|^2 n^{-2 sigma2} with sigma2 = two_sigma2 / 2.
/// Requires sigma2 > 1/2 and sigma1 + sigma2 > 3/2.
SeriesResult series_z22(ComplexPoint s1, double two_sigma2, double tol);
SeriesResult series_z22_terms(ComplexPoint s1, double two_sigma2, std::int64_t K);

/// sum_{k=2}^{K} (sum_{mn=k, m<n} m^{-sigma1} n^{-sigma2})^2. The tail uses
/// exponent -2 sigma2 + 0.05 (sigma1 >= sigma2) or -sigma1 - sigma2 + 0.05,
/// with the divisor-pair constant max_{k<=K} r(k)^2 / k^0.05 measured on the
/// table; it is infinite when that exponent does not exceed 1.
/// Requires sigma2 > 1/2 and sigma1 + sigma2 > 1.
SeriesResult series_z2box(double sigma1, double sigma2, std::int64_t K = default_box_terms);

/// Strict convergence region of each series. For z21 the point is
/// (sigma1, s2 = sigma2 + i t2); for z22 it is (s1 = sigma1 + i t, sigma2).
bool region_check(SeriesKind which, double sigma1, double sigma2, double t2 = 0.0);

}  // namespace dzeta
