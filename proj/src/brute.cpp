#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dzeta/dzeta.hpp"
#include "dzeta/numeric.hpp"

namespace dzeta {

namespace {

constexpr int checkpoint_count = 40;
constexpr int chain_length = 4;
constexpr double sample_range = 1024.0;
constexpr int max_attempts = 3;

struct Samples {
  std::vector<double> L;
  std::vector<cplx> S;
  /// Rounding bound of each S(L).
  std::vector<double> E;
};

/// Partial sums S(L) = sum_{2<=n<=L} n^{-s2} sum_{m<n} m^{-s1} at
/// quadratically spaced L in [L0, sample_range L0].
Samples partial_sums(cplx s1, cplx s2, std::int64_t L0) {
  Samples out;
  std::vector<std::int64_t> marks;
  const double span = std::sqrt(sample_range) - 1.0;
  for (int p = 0; p < checkpoint_count; ++p) {
    const double r = 1.0 + span * p / (checkpoint_count - 1);
    const auto L = static_cast<std::int64_t>(std::llround(static_cast<double>(L0) * r * r));
    if (marks.empty() || L > marks.back()) marks.push_back(L);
  }
  // Each power carries relative error power_rounding, passed on through the prefix.
  const double Lmax = static_cast<double>(marks.back());
  const double r1 = power_rounding(s1, Lmax);
  const double r2 = power_rounding(s2, Lmax);
  CompensatedSum prefix;
  CompensatedSum total;
  double prefix_abs = 0.0;
  double carried = 0.0;
  std::size_t next = 0;
  for (std::int64_t n = 2; next < marks.size(); ++n) {
    const double dn = static_cast<double>(n);
    const cplx a = pow_neg(dn - 1.0, s1);
    const cplx b = pow_neg(dn, s2);
    prefix += a;
    prefix_abs += std::abs(a);
    total += prefix.value() * b;
    carried += std::abs(b) * prefix_abs;
    if (n == marks[next]) {
      out.L.push_back(dn);
      out.S.push_back(total.value());
      out.E.push_back(r1 * carried + r2 * total.magnitude());
      ++next;
    }
  }
  return out;
}

/// Integral bound on sum_{n>L} n^{-sigma2} sum_{m<n} m^{-sigma1}.
double raw_tail_bound(double sig1, double sig2, double L) {
  const double a = sig2 - 1.0;
  if (sig1 > 1.0) return (1.0 + 1.0 / (sig1 - 1.0)) * std::pow(L, -a) / a;
  if (sig1 == 1.0) {
    const double logL = std::log(L);
    return std::pow(L, -a) * ((1.0 + logL) / a + 1.0 / (a * a));
  }
  const double c = std::max(1.0, 1.0 / (1.0 - sig1));
  const double b = sig1 + sig2 - 2.0;
  return c * std::pow(L, -b) / b;
}

/// Basis of the omitted tail: L^{-beta} for the chain from zeta(s1) times the
/// tail in s2, and the chain from n^{1-s1}/(1-s1); a second-chain exponent
/// within 0.5 of a first-chain one is replaced by the divided difference
/// (L^{-a} - L^{-b}) / (b - a), which becomes L^{-a} log L as b -> a.
Eigen::MatrixXcd design(const std::vector<double>& L, const std::vector<int>& rows, cplx s1,
                        cplx s2, int J) {
  std::vector<cplx> chain_a;
  for (int j = 0; j < J; ++j) chain_a.push_back(s2 - 1.0 + static_cast<double>(j));
  const int cols = 1 + 2 * J;
  Eigen::MatrixXcd X(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double x = L[static_cast<std::size_t>(rows[r])];
    const double logx = std::log(x);
    const auto i = static_cast<Eigen::Index>(r);
    X(i, 0) = 1.0;
    for (int j = 0; j < J; ++j) X(i, 1 + j) = pow_neg(x, chain_a[static_cast<std::size_t>(j)]);
    for (int j = 0; j < J; ++j) {
      const cplx b = s1 + s2 - 2.0 + static_cast<double>(j);
      cplx col = pow_neg(x, b);
      for (const cplx a : chain_a) {
        const cplx d = b - a;
        if (std::abs(d) < 0.5) {
          col = pow_neg(x, a) * logx * expm1_over(-d * logx);
          break;
        }
      }
      X(i, 1 + J + j) = col;
    }
  }
  return X;
}

/// Extrapolated limit and the rounding it inherits from the samples. With w
/// the first row of the pseudo-inverse, the sample errors are cumulative,
/// e_i = e_0 + sum_{k<i} d_k with |d_k| <= E_{k+1} - E_k, so the limit is off
/// by at most |e_0| |sum w| + sum_k |sum_{i>k} w_i| (E_{k+1} - E_k).
struct Fit {
  cplx limit;
  double rounding = 0.0;
};

Fit fit_limit(const Samples& s, const std::vector<int>& rows, cplx s1, cplx s2, int J) {
  Eigen::MatrixXcd X = design(s.L, rows, s1, s2, J);
  Eigen::VectorXcd y(X.rows());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    y(static_cast<Eigen::Index>(r)) = s.S[static_cast<std::size_t>(rows[r])];
  }
  Eigen::VectorXd scale = X.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    if (scale(c) > 0.0) X.col(c) /= scale(c);
  }
  const auto qr = X.colPivHouseholderQr();
  const Eigen::VectorXcd beta = qr.solve(y);
  const Eigen::MatrixXcd pinv = qr.solve(Eigen::MatrixXcd::Identity(X.rows(), X.rows()));
  auto E = [&](std::size_t r) { return s.E[static_cast<std::size_t>(rows[r])]; };
  cplx after = 0.0;  // sum_{i>k} w_i
  double rounding = 0.0;
  for (std::size_t k = rows.size(); k-- > 1;) {
    after += pinv(0, static_cast<Eigen::Index>(k));
    rounding += std::abs(after) * (E(k) - E(k - 1));
  }
  after += pinv(0, 0);
  rounding += std::abs(after) * E(0);
  return {beta(0) / scale(0), rounding / scale(0)};
}

}  // namespace

DzetaValue dzeta_brute(const DzetaPoint& p, double tol) {
  const double sig1 = p.s1.sigma;
  const double sig2 = p.s2.sigma;
  if (!(sig2 > 1.0 && sig1 + sig2 > 2.0)) {
    throw DomainError("brute: requires sigma2 > 1 and sigma1 + sigma2 > 2");
  }
  if (!(tol > 0.0)) throw DomainError("brute: tol must be positive");
  const cplx s1 = p.s1.z();
  const cplx s2 = p.s2.z();

  auto L0 = std::max<std::int64_t>(
      1000, static_cast<std::int64_t>(std::ceil(100.0 * (std::abs(s1) + std::abs(s2)))));
  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < max_attempts; ++attempt, L0 *= 4) {
    const Samples s = partial_sums(s1, s2, L0);
    const double Lmax = s.L.back();

    DzetaValue out;
    out.split = SplitChoice::brute;
    out.terms = static_cast<std::int64_t>(Lmax);

    const double raw = raw_tail_bound(sig1, sig2, Lmax) + s.E.back();
    if (raw <= tol) {
      out.value = s.S.back() + cplx(0.0);  // no signed zeros
      out.err = raw;
      return out;
    }

    std::vector<int> all(s.L.size());
    std::vector<int> even;
    std::vector<int> odd;
    for (std::size_t i = 0; i < s.L.size(); ++i) {
      all[i] = static_cast<int>(i);
      (i % 2 == 0 ? even : odd).push_back(static_cast<int>(i));
    }
    const Fit full = fit_limit(s, all, s1, s2, chain_length);
    const Fit lower = fit_limit(s, all, s1, s2, chain_length - 1);
    const Fit half_a = fit_limit(s, even, s1, s2, chain_length);
    const Fit half_b = fit_limit(s, odd, s1, s2, chain_length);
    const double spread =
        std::max({std::abs(full.limit - lower.limit), std::abs(full.limit - half_a.limit),
                  std::abs(full.limit - half_b.limit)});
    const double rounding =
        std::max({full.rounding, lower.rounding, half_a.rounding, half_b.rounding});
    out.value = full.limit + cplx(0.0);
    out.err = 2.0 * spread + 2.0 * rounding;
    if (out.err <= tol) return out;
    best = std::min(best, out.err);
  }
  throw AccuracyError("brute: extrapolation error above tol after " +
                          std::to_string(max_attempts) + " sample ranges",
                      best);
}

}  // namespace dzeta
