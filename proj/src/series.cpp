#include "dzeta/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dzeta/bernoulli.hpp"
#include "dzeta/numeric.hpp"
#include "dzeta/zeta.hpp"

namespace dzeta {

namespace {

constexpr double box_eps = 0.05;
constexpr int majorant_order = 9;

/// int_K^inf x^{-a} (log x)^j dx for j <= 2, a > 1.
double log_power_integral(double K, double a, int j) {
  if (!(a > 1.0)) return std::numeric_limits<double>::infinity();
  const double b = a - 1.0;
  const double L = std::log(K);
  const double base = std::pow(K, -b);
  switch (j) {
    case 0: return base / b;
    case 1: return base * (L / b + 1.0 / (b * b));
    default: return base * (L * L / b + 2.0 * L / (b * b) + 2.0 / (b * b * b));
  }
}

/// beta with |T(s, m)| <= m^{1-sigma} / |s-1| + beta m^{-sigma} for all m >= K,
/// from the Euler-Maclaurin form of the tail; infinite below K = |s|.
double tail_majorant(cplx s, double K) {
  if (K < std::abs(s) || !(s.real() + majorant_order - 1.0 > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  double beta = 0.5;
  cplx poch = 1.0;
  for (int k = 1; k <= majorant_order - 1; ++k) {
    poch *= s + static_cast<double>(k - 1);
    if (k % 2 == 1) beta += std::abs(em_coefficient(k) * poch) * std::pow(K, -k);
  }
  beta += std::abs(pochhammer(s, majorant_order)) / factorial(majorant_order) *
          periodic_bernoulli_sup(majorant_order) * std::pow(K, 1.0 - majorant_order) /
          (s.real() + majorant_order - 1.0);
  return beta;
}

void require_z21(double two_sigma1, ComplexPoint s2) {
  if (!region_check(SeriesKind::z21, two_sigma1 / 2.0, s2.sigma, s2.t)) {
    throw DomainError("z21 diverges: requires sigma1 + sigma2 > 3/2 and s2 != 1");
  }
  if (std::abs(s2.z() - 1.0) < singularity_eps) throw SingularError("z21: s2 too close to 1");
}

void require_z22(ComplexPoint s1, double two_sigma2) {
  if (!region_check(SeriesKind::z22, s1.sigma, two_sigma2 / 2.0, s1.t)) {
    throw DomainError("z22 diverges: requires sigma2 > 1/2 and sigma1 + sigma2 > 3/2");
  }
}

/// Running state of the z21 sum.
class Z21 {
 public:
  Z21(double two_sigma1, ComplexPoint s2)
      : two_sigma1_(two_sigma1), s2_(s2.z()), zeta_(zeta(s2_)), tail_(zeta_.value) {
    delta_ = zeta_.err + rounding_unit * (1.0 + std::abs(zeta_.value));
  }

  void step() {
    ++m_;
    const double dm = static_cast<double>(m_);
    tail_ -= pow_neg(dm, s2_);
    const double weight = std::pow(dm, -two_sigma1_);
    const double mod = std::abs(tail_.value());
    sum_ += weight * mod * mod;
    eval_err_ += weight * (2.0 * mod * delta_ + delta_ * delta_);
  }

  double tail_bound() const {
    const double K = static_cast<double>(m_);
    const double a = 1.0 / std::abs(s2_ - 1.0);
    const double beta = tail_majorant(s2_, K);
    if (!std::isfinite(beta)) return beta;
    const double sig2 = s2_.real();
    // (a m^{1-sigma2} + beta m^{-sigma2})^2 m^{-2 sigma1}, integrated past K.
    const double outer = a * a * log_power_integral(K, two_sigma1_ + 2.0 * sig2 - 2.0, 0) +
                         2.0 * a * beta * log_power_integral(K, two_sigma1_ + 2.0 * sig2 - 1.0, 0) +
                         beta * beta * log_power_integral(K, two_sigma1_ + 2.0 * sig2, 0);
    return outer + eval_err_ + rounding_unit * sum_;
  }

  SeriesResult result() const { return {sum_, tail_bound(), m_}; }
  std::int64_t terms() const { return m_; }

 private:
  double two_sigma1_;
  cplx s2_;
  ApproxValue zeta_;
  CompensatedSum tail_;
  double delta_ = 0.0;
  std::int64_t m_ = 0;
  double sum_ = 0.0;
  double eval_err_ = 0.0;
};

class Z22 {
 public:
  Z22(ComplexPoint s1, double two_sigma2) : s1_(s1.z()), two_sigma2_(two_sigma2) {
    if (std::abs(s1_ - 1.0) >= singularity_eps) {
      const ApproxValue z = zeta(s1_);
      zeta1_ = std::abs(z.value) + z.err;
    }
  }

  void step() {
    ++n_;
    if (n_ < 2) return;
    const double dn = static_cast<double>(n_);
    prefix_ += pow_neg(dn - 1.0, s1_);
    const double mod = std::abs(prefix_.value());
    sum_ += mod * mod * std::pow(dn, -two_sigma2_);
  }

  double tail_bound() const {
    const double K = static_cast<double>(n_);
    const double sig1 = s1_.real();
    const double a2 = two_sigma2_;
    double crude = 0.0;
    if (std::abs(sig1 - 1.0) < 1e-12) {
      crude = log_power_integral(K, a2, 0) + 2.0 * log_power_integral(K, a2, 1) +
              log_power_integral(K, a2, 2);
    } else if (sig1 > 1.0) {
      const double c = 1.0 + 1.0 / (sig1 - 1.0);
      crude = c * c * log_power_integral(K, a2, 0);
    } else {
      const double c = std::max(1.0, 1.0 / (1.0 - sig1));
      crude = c * c * log_power_integral(K, a2 + 2.0 * sig1 - 2.0, 0);
    }
    double refined = std::numeric_limits<double>::infinity();
    const double beta = tail_majorant(s1_, K);
    if (std::isfinite(zeta1_) && std::isfinite(beta)) {
      // |H_{n-1}| <= |zeta(s1)| + n^{1-sigma1}/|s1-1| + (beta+1) n^{-sigma1}.
      const double A = zeta1_;
      const double B = 1.0 / std::abs(s1_ - 1.0);
      const double C = beta + 1.0;
      refined = A * A * log_power_integral(K, a2, 0) +
                B * B * log_power_integral(K, a2 + 2.0 * sig1 - 2.0, 0) +
                C * C * log_power_integral(K, a2 + 2.0 * sig1, 0) +
                2.0 * A * B * log_power_integral(K, a2 + sig1 - 1.0, 0) +
                2.0 * A * C * log_power_integral(K, a2 + sig1, 0) +
                2.0 * B * C * log_power_integral(K, a2 + 2.0 * sig1 - 1.0, 0);
    }
    return std::min(crude, refined) + 4.0 * rounding_unit * sum_;
  }

  SeriesResult result() const { return {sum_, tail_bound(), n_}; }
  std::int64_t terms() const { return n_; }

 private:
  cplx s1_;
  double two_sigma2_;
  double zeta1_ = std::numeric_limits<double>::infinity();
  CompensatedSum prefix_;
  std::int64_t n_ = 0;
  double sum_ = 0.0;
};

template <class Series>
SeriesResult sum_to_tolerance(Series series, double tol, const char* who) {
  if (!(tol > 0.0)) throw DomainError(std::string(who) + ": tol must be positive");
  std::int64_t check = 64;
  double bound = std::numeric_limits<double>::infinity();
  while (series.terms() < series_term_cap) {
    series.step();
    if (series.terms() == check) {
      bound = series.tail_bound();
      if (bound <= tol) return series.result();
      check *= 2;
    }
  }
  bound = series.tail_bound();
  if (bound <= tol) return series.result();
  throw AccuracyError(std::string(who) + ": tail bound above tol at the term cap",
                      bound);
}

template <class Series>
SeriesResult sum_terms(Series series, std::int64_t K) {
  if (K < 1) throw DomainError("series: K must be >= 1");
  while (series.terms() < K) series.step();
  return series.result();
}

}  // namespace

std::string_view to_string(SeriesKind which) {
  switch (which) {
    case SeriesKind::z21: return "z21";
    case SeriesKind::z22: return "z22";
    case SeriesKind::z2box: return "z2box";
  }
  return "z21";
}

SeriesKind parse_series(std::string_view name) {
  for (auto k : {SeriesKind::z21, SeriesKind::z22, SeriesKind::z2box}) {
    if (name == to_string(k)) return k;
  }
  throw DomainError("unknown series '" + std::string(name) + "' (expected z21, z22 or z2box)");
}

DivisorTable::DivisorTable(std::int64_t K) : K_(std::max<std::int64_t>(K, 1)) {
  offsets_.assign(static_cast<std::size_t>(K_ + 2), 0);
  // Pairs k = m (m + j), j >= 1: first count per row, then fill in m order so
  // each row comes out ascending.
  for (std::int64_t m = 1; m * (m + 1) <= K_; ++m) {
    for (std::int64_t k = m * (m + 1); k <= K_; k += m) ++offsets_[static_cast<std::size_t>(k + 1)];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  divisors_.resize(static_cast<std::size_t>(offsets_.back()));
  std::vector<std::int64_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::int64_t m = 1; m * (m + 1) <= K_; ++m) {
    for (std::int64_t k = m * (m + 1); k <= K_; k += m) {
      divisors_[static_cast<std::size_t>(fill[static_cast<std::size_t>(k)]++)] =
          static_cast<std::int32_t>(m);
    }
  }
}

std::span<const std::int32_t> DivisorTable::row(std::int64_t k) const {
  if (k < 2 || k > K_) return {};
  const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(k)]);
  const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(k + 1)]);
  return {divisors_.data() + b, e - b};
}

SeriesResult series_z21(double two_sigma1, ComplexPoint s2, double tol) {
  require_z21(two_sigma1, s2);
  return sum_to_tolerance(Z21(two_sigma1, s2), tol, "z21");
}

SeriesResult series_z21_terms(double two_sigma1, ComplexPoint s2, std::int64_t K) {
  require_z21(two_sigma1, s2);
  return sum_terms(Z21(two_sigma1, s2), K);
}

SeriesResult series_z22(ComplexPoint s1, double two_sigma2, double tol) {
  require_z22(s1, two_sigma2);
  return sum_to_tolerance(Z22(s1, two_sigma2), tol, "z22");
}

SeriesResult series_z22_terms(ComplexPoint s1, double two_sigma2, std::int64_t K) {
  require_z22(s1, two_sigma2);
  return sum_terms(Z22(s1, two_sigma2), K);
}

SeriesResult series_z2box(double sigma1, double sigma2, std::int64_t K) {
  if (!region_check(SeriesKind::z2box, sigma1, sigma2)) {
    throw DomainError("z2box diverges: requires sigma2 > 1/2 and sigma1 + sigma2 > 1");
  }
  if (K < 2) throw DomainError("z2box: K must be >= 2");
  const DivisorTable table(K);
  const auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(K))) + 2;
  std::vector<double> weight(root);
  for (std::size_t m = 1; m < root; ++m) weight[m] = std::pow(static_cast<double>(m), sigma2 - sigma1);

  double sum = 0.0;
  double pair_constant = 0.0;
  for (std::int64_t k = 2; k <= K; ++k) {
    const auto row = table.row(k);
    double inner = 0.0;
    for (const std::int32_t m : row) inner += weight[static_cast<std::size_t>(m)];
    const double dk = static_cast<double>(k);
    sum += inner * inner * std::pow(dk, -2.0 * sigma2);
    const double r = static_cast<double>(row.size());
    pair_constant = std::max(pair_constant, r * r * std::pow(dk, -box_eps));
  }
  const double exponent =
      (sigma1 >= sigma2 ? 2.0 * sigma2 : sigma1 + sigma2) - box_eps;
  const double tail = pair_constant * log_power_integral(static_cast<double>(K), exponent, 0);
  return {sum, tail + rounding_unit * sum, K};
}

bool region_check(SeriesKind which, double sigma1, double sigma2, double t2) {
  switch (which) {
    case SeriesKind::z21: return sigma1 + sigma2 > 1.5 && !(sigma2 == 1.0 && t2 == 0.0);
    case SeriesKind::z22: return sigma2 > 0.5 && sigma1 + sigma2 > 1.5;
    case SeriesKind::z2box: return sigma2 > 0.5 && sigma1 + sigma2 > 1.0;
  }
  return false;
}

}  // namespace dzeta
