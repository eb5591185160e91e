#include "dzeta/zeta.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dzeta/bernoulli.hpp"
#include "dzeta/numeric.hpp"

namespace dzeta {

namespace {

// 8-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 8> gl_nodes = {
    0.019855071751231856, 0.10166676129318664, 0.23723379504183550, 0.40828267875217510,
    0.59171732124782490,  0.76276620495816450, 0.89833323870681336, 0.98014492824876814};
constexpr std::array<double, 8> gl_weights = {
    0.050614268145188130, 0.11119051722668724, 0.15685332293894364, 0.18134189168918100,
    0.18134189168918100,  0.15685332293894364, 0.11119051722668724, 0.050614268145188130};

void check_order(int M) {
  if (M < 3 || M % 2 == 0 || M > periodic_bernoulli_max_order) {
    throw DomainError("Euler-Maclaurin order M must be odd with 3 <= M <= 15, got " +
                      std::to_string(M));
  }
}

void check_pole(cplx s, const char* who) {
  if (std::abs(s - 1.0) < singularity_eps) {
    throw SingularError(std::string(who) + ": |s - 1| < " + std::to_string(singularity_eps));
  }
}

/// Value of the boundary terms N^{1-s}/(s-1) - N^{-s}/2 + sum_k c_k (s)_k N^{-s-k}.
double n_of(std::int64_t N) { return static_cast<double>(N); }

cplx boundary_terms(cplx s, std::int64_t N, int M, double* magnitude) {
  const double n = static_cast<double>(N);
  const double logn = std::log(n);
  const cplx n_s = std::exp(-s * logn);
  cplx acc = n * n_s / (s - 1.0) - 0.5 * n_s;
  double mag = std::abs(n * n_s / (s - 1.0)) + 0.5 * std::abs(n_s);
  cplx poch = 1.0;
  double n_k = 1.0;
  for (int k = 1; k <= M - 1; ++k) {
    poch *= s + static_cast<double>(k - 1);
    n_k /= n;
    if (k % 2 == 0) continue;  // B_{k+1} = 0
    const cplx term = em_coefficient(k) * poch * n_s * n_k;
    acc += term;
    mag += std::abs(term);
  }
  if (magnitude != nullptr) *magnitude = mag;
  return acc;
}

cplx direct_sum(cplx s, std::int64_t N, double* magnitude) {
  CompensatedSum sum;
  for (std::int64_t n = 1; n <= N; ++n) sum += pow_neg(static_cast<double>(n), s);
  if (magnitude != nullptr) *magnitude = sum.magnitude();
  return sum.value();
}

/// Gauss-Legendre value of int_j^{j+1} B_M({x}) x^{-s-M} dx on one unit interval.
cplx unit_interval(cplx exponent, double j, const std::array<double, 8>& bern) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < gl_nodes.size(); ++i) {
    acc += gl_weights[i] * bern[i] * pow_neg(j + gl_nodes[i], exponent);
  }
  return acc;
}

cplx half_intervals(cplx exponent, double j, int M) {
  cplx acc = 0.0;
  for (double offset : {0.0, 0.5}) {
    for (std::size_t i = 0; i < gl_nodes.size(); ++i) {
      const double u = offset + 0.5 * gl_nodes[i];
      acc += 0.5 * gl_weights[i] * periodic_bernoulli(M, u) * pow_neg(j + u, exponent);
    }
  }
  return acc;
}

cplx pochhammer_derivative(cplx s, int k) {
  cplx sum = 0.0;
  for (int j = 0; j < k; ++j) {
    cplx prod = 1.0;
    for (int i = 0; i < k; ++i) {
      if (i != j) prod *= s + static_cast<double>(i);
    }
    sum += prod;
  }
  return sum;
}

double em_remainder_prime_bound(cplx s, std::int64_t N, int M) {
  const double a = s.real() + M;
  if (a <= 1.0) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(N);
  const double logn = std::log(n);
  const double base = periodic_bernoulli_sup(M) / factorial(M) * std::pow(n, 1.0 - a);
  return base * (std::abs(pochhammer_derivative(s, M)) / (a - 1.0) +
                 std::abs(pochhammer(s, M)) * (logn / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0))));
}

}  // namespace

double em_remainder_bound(cplx s, std::int64_t N, int M) {
  const double denom = s.real() + M - 1.0;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(pochhammer(s, M)) / factorial(M) * periodic_bernoulli_sup(M) *
         std::pow(static_cast<double>(N), -denom) / denom;
}

std::int64_t em_cutoff(cplx s, int M, double target, std::int64_t start, std::int64_t N_max) {
  std::int64_t N = std::max<std::int64_t>(start, 1);
  while (N < N_max && em_remainder_bound(s, N, M) > target) N *= 2;
  return std::min(N, N_max);
}

ApproxValue zeta_tail(cplx s, std::int64_t N, int M) {
  check_order(M);
  if (s == cplx(1.0, 0.0)) throw SingularError("zeta_tail: pole at s = 1");
  double mag = 0.0;
  const cplx value = boundary_terms(s, N, M, &mag);
  return {value, em_remainder_bound(s, N, M) + power_rounding(s, n_of(N)) * mag};
}

ApproxValue zeta_tail_prime(cplx s, std::int64_t N, int M) {
  check_order(M);
  if (s == cplx(1.0, 0.0)) throw SingularError("zeta_tail_prime: pole at s = 1");
  const double n = static_cast<double>(N);
  const double logn = std::log(n);
  const cplx n_s = std::exp(-s * logn);
  const cplx inv = 1.0 / (s - 1.0);
  cplx acc = n * n_s * (-logn * inv - inv * inv) + 0.5 * logn * n_s;
  double mag = std::abs(n * n_s * logn * inv) + std::abs(n * n_s * inv * inv) +
               std::abs(0.5 * logn * n_s);
  double n_k = 1.0;
  for (int k = 1; k <= M - 1; ++k) {
    n_k /= n;
    if (k % 2 == 0) continue;
    const cplx poch = pochhammer(s, k);
    const cplx term =
        em_coefficient(k) * n_s * n_k * (pochhammer_derivative(s, k) - poch * logn);
    acc += term;
    mag += std::abs(term);
  }
  return {acc, em_remainder_prime_bound(s, N, M) + power_rounding(s, n) * mag};
}

ApproxValue zeta_em(ComplexPoint sp, const EMParams& params) {
  check_order(params.M);
  const cplx s = sp.z();
  if (params.N < 1) throw DomainError("zeta_em: N must be >= 1");
  if (!(sp.sigma > -(params.M - 1))) {
    throw DomainError("zeta_em: requires sigma > -(M-1) = " + std::to_string(-(params.M - 1)));
  }
  check_pole(s, "zeta_em");

  double mag_sum = 0.0;
  double mag_tail = 0.0;
  const cplx partial = direct_sum(s, params.N, &mag_sum);
  const cplx tail = boundary_terms(s, params.N, params.M, &mag_tail);
  const cplx value = partial + tail;
  const double rounding = power_rounding(s, n_of(params.N)) * (mag_sum + mag_tail);
  const double bound = em_remainder_bound(s, params.N, params.M);

  if (params.remainder_mode == RemainderMode::bound_only) {
    return {value, bound + rounding};
  }

  // integrate: R_{M,N}(s) = -(s)_M / M! * int_N^inf B_M({x}) x^{-s-M} dx
  const int M = params.M;
  const cplx prefactor = -pochhammer(s, M) / factorial(M);
  const cplx exponent = s + static_cast<double>(M);
  const double sup = periodic_bernoulli_sup(M);
  const double decay = sp.sigma + M - 1.0;
  std::array<double, 8> bern{};
  for (std::size_t i = 0; i < gl_nodes.size(); ++i) bern[i] = periodic_bernoulli(M, gl_nodes[i]);

  constexpr std::int64_t max_intervals = 1'000'000;
  const double stop = 1e-16 * std::max(std::abs(value), 1e-300);
  CompensatedSum integral;
  double j = static_cast<double>(params.N);
  std::int64_t count = 0;
  double tail_bound = bound;
  while (count < max_intervals) {
    integral += unit_interval(exponent, j, bern);
    ++count;
    j += 1.0;
    tail_bound = std::abs(prefactor) * sup * std::pow(j, -decay) / decay;
    if (tail_bound < stop) break;
  }
  const double first = static_cast<double>(params.N);
  const double quad_err =
      std::abs(prefactor) *
      std::abs(unit_interval(exponent, first, bern) - half_intervals(exponent, first, M)) *
      static_cast<double>(count);
  const cplx remainder = prefactor * integral.value();
  return {value + remainder,
          tail_bound + quad_err + rounding + power_rounding(exponent, j) * std::abs(remainder)};
}

ApproxValue zeta_kt(ComplexPoint sp, int m, const TruncationPolicy& policy) {
  if (m < 1 || 2 * m + 1 > periodic_bernoulli_max_order - 2) {
    throw DomainError("zeta_kt: order m must satisfy 1 <= m <= 6");
  }
  if (!(std::abs(sp.t) > 1.0)) {
    throw PreconditionError("zeta_kt: requires |t| > 1 (use zeta_em)");
  }
  if (!(sp.sigma > -2.0 * m - 1.0)) {
    throw DomainError("zeta_kt: requires sigma > -2m-1 = " + std::to_string(-2 * m - 1));
  }
  const cplx s = sp.z();
  const int M = 2 * m + 1;
  const auto N = std::max<std::int64_t>(
      static_cast<std::int64_t>(std::ceil(std::abs(sp.t) / 4.0)) + 1, policy.N_min);

  double mag_sum = 0.0;
  double mag_tail = 0.0;
  const cplx value = direct_sum(s, N, &mag_sum) + boundary_terms(s, N, M, &mag_tail);
  double err = 0.0;
  if (sp.sigma + M - 1.0 > 0.25) {
    err = em_remainder_bound(s, N, M);
  } else {
    // In the strip -2m-1 < sigma <= -2m + 1/4 the order-M integral bound
    // degenerates; bound the next nonzero term plus the order-(M+2) remainder.
    const double n = static_cast<double>(N);
    err = std::abs(em_coefficient(M) * pochhammer(s, M) * pow_neg(n, s + static_cast<double>(M))) +
          em_remainder_bound(s, N, M + 2);
  }
  return {value, err + power_rounding(s, n_of(N)) * (mag_sum + mag_tail)};
}

namespace {

void check_hl_window(ComplexPoint sp, double x, const TruncationPolicy& policy, bool strict,
                     const char* who) {
  if (!(policy.C > 1.0)) throw DomainError(std::string(who) + ": C must exceed 1");
  if (!(sp.sigma > 0.0)) throw DomainError(std::string(who) + ": requires sigma > 0");
  if (!(x >= 1.0)) throw PreconditionError(std::string(who) + ": requires x >= 1");
  const double window = 2.0 * pi * x / policy.C;
  const bool ok = strict ? std::abs(sp.t) < window : std::abs(sp.t) <= window;
  if (!ok) {
    throw PreconditionError(std::string(who) + ": requires |t| " + (strict ? "<" : "<=") +
                            " 2 pi x / C = " + std::to_string(window));
  }
  check_pole(sp.z(), who);
}

}  // namespace

ApproxValue zeta_hl(ComplexPoint sp, double x, const TruncationPolicy& policy) {
  check_hl_window(sp, x, policy, false, "zeta_hl");
  const cplx s = sp.z();
  double mag = 0.0;
  const auto N = static_cast<std::int64_t>(std::floor(x));
  const cplx partial = direct_sum(s, N, &mag);
  const cplx correction = x * pow_neg(x, s) / (1.0 - s);
  return {partial - correction,
          K_hl * std::pow(x, -sp.sigma) + power_rounding(s, x) * (mag + std::abs(correction))};
}

ApproxValue zeta_prime_hl(ComplexPoint sp, double x, const TruncationPolicy& policy) {
  check_hl_window(sp, x, policy, true, "zeta_prime_hl");
  if (!(x >= std::exp(1.0 / sp.sigma))) {
    throw PreconditionError("zeta_prime_hl: requires x >= exp(1/sigma)");
  }
  const cplx s = sp.z();
  const auto N = static_cast<std::int64_t>(std::floor(x));
  CompensatedSum sum;
  for (std::int64_t n = 2; n <= N; ++n) {
    const double dn = static_cast<double>(n);
    sum -= pow_neg(dn, s) * std::log(dn);
  }
  const double logx = std::log(x);
  const cplx x1s = x * pow_neg(x, s);
  const cplx inv = 1.0 / (s - 1.0);
  const cplx correction = x1s * logx * inv + x1s * inv * inv;
  return {sum.value() - correction,
          K_hl * std::pow(x, -sp.sigma) * logx +
              power_rounding(s, x) * (sum.magnitude() + std::abs(correction))};
}

ApproxValue zeta_unguarded(cplx s, const TruncationPolicy& policy) {
  check_order(policy.M);
  if (!(s.real() > -(policy.M - 1))) {
    throw DomainError("zeta: requires sigma > -(M-1) = " + std::to_string(-(policy.M - 1)));
  }
  const auto abs_s = static_cast<std::int64_t>(std::ceil(std::abs(s)));
  std::int64_t N = 0;
  if (s.real() >= 0.0) {
    N = em_cutoff(s, policy.M, policy.target, std::max(policy.N_min, abs_s), policy.N_max);
  } else {
    // The direct sum grows like N^{1-sigma}, so past some point doubling N
    // costs more in rounding than it saves in truncation.
    const double sigma = s.real();
    auto estimate = [&](std::int64_t n) {
      const double x = n_of(n);
      return em_remainder_bound(s, n, policy.M) +
             power_rounding(s, x) * std::pow(x, 1.0 - sigma) / (1.0 - sigma);
    };
    N = std::max<std::int64_t>(abs_s, 4);
    while (N < policy.N_max && em_remainder_bound(s, N, policy.M) > policy.target &&
           estimate(2 * N) < estimate(N)) {
      N *= 2;
    }
  }
  double mag_sum = 0.0;
  double mag_tail = 0.0;
  const cplx value = direct_sum(s, N, &mag_sum) + boundary_terms(s, N, policy.M, &mag_tail);
  return {value, em_remainder_bound(s, N, policy.M) +
                     power_rounding(s, n_of(N)) * (mag_sum + mag_tail)};
}

ApproxValue zeta(cplx s, const TruncationPolicy& policy) {
  check_pole(s, "zeta");
  return zeta_unguarded(s, policy);
}

ApproxValue zeta_prime(cplx s, const TruncationPolicy& policy) {
  check_pole(s, "zeta_prime");
  check_order(policy.M);
  if (!(s.real() > -(policy.M - 1))) {
    throw DomainError("zeta_prime: requires sigma > -(M-1)");
  }
  const auto start =
      std::max<std::int64_t>(policy.N_min, static_cast<std::int64_t>(std::ceil(std::abs(s))));
  std::int64_t N = start;
  while (N < policy.N_max && em_remainder_prime_bound(s, N, policy.M) > policy.target) N *= 2;
  N = std::min(N, policy.N_max);
  CompensatedSum sum;
  for (std::int64_t n = 2; n <= N; ++n) {
    const double dn = static_cast<double>(n);
    sum -= pow_neg(dn, s) * std::log(dn);
  }
  const ApproxValue tail = zeta_tail_prime(s, N, policy.M);
  return {sum.value() + tail.value, tail.err + power_rounding(s, n_of(N)) * sum.magnitude()};
}

}  // namespace dzeta
