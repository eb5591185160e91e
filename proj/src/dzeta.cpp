#include "dzeta/dzeta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dzeta/bernoulli.hpp"
#include "dzeta/numeric.hpp"
#include "dzeta/zeta.hpp"

namespace dzeta {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

/// Distance from w to {2, 1, 0, -2, -4, ...}.
double singular_distance(cplx w) {
  double d = std::min(std::abs(w - 2.0), std::abs(w - 1.0));
  const double even = std::min(0.0, 2.0 * std::round(w.real() / 2.0));
  return std::min(d, std::abs(w - even));
}

int split_order(const TruncationPolicy& policy) {
  if (policy.depth < 1 || 2 * policy.depth + 1 > periodic_bernoulli_max_order) {
    throw DomainError("continuation depth l must satisfy 1 <= l <= 7");
  }
  int M = std::max(2 * policy.depth + 1, policy.M);
  if (M % 2 == 0) ++M;
  return std::min(M, periodic_bernoulli_max_order);
}

std::int64_t initial_cutoff(const DzetaPoint& p, const TruncationPolicy& policy) {
  const auto scale = static_cast<std::int64_t>(std::ceil(std::abs(p.s1.z())) +
                                               std::ceil(std::abs(p.s2.z())));
  return std::max<std::int64_t>(policy.N_min, scale);
}

/// Bound on sum_{m>N} m^{-sigma_a} |R_{M,m}(s_b)| for the split remainders.
double split_remainder_bound(cplx s_b, double sigma_sum, std::int64_t N, int M) {
  const double inner = s_b.real() + M - 1.0;
  const double outer = sigma_sum + M - 2.0;
  return std::abs(pochhammer(s_b, M)) / factorial(M) * periodic_bernoulli_sup(M) / inner *
         std::pow(static_cast<double>(N), -outer) / outer;
}

/// Truncation budget of the expansion of sum over m > N with Pochhammer
/// factors taken from s_b, not counting rounding.
double split_budget(cplx s_b, cplx w, cplx pole_factor, std::int64_t N, int M) {
  double b = split_remainder_bound(s_b, w.real(), N, M);
  b += em_remainder_bound(w - 1.0, N, M) * std::abs(pole_factor);
  b += 0.5 * em_remainder_bound(w, N, M);
  cplx poch = 1.0;
  for (int k = 1; k <= M - 1; ++k) {
    poch *= s_b + static_cast<double>(k - 1);
    if (k % 2 == 0) continue;
    b += std::abs(em_coefficient(k) * poch) * em_remainder_bound(w + static_cast<double>(k), N, M);
  }
  return b;
}

/// sum_k c_k (s_b)_k T(w + k, N) for odd k < M.
ApproxValue bernoulli_tails(cplx s_b, cplx w, std::int64_t N, int M) {
  ApproxValue acc;
  cplx poch = 1.0;
  for (int k = 1; k <= M - 1; ++k) {
    poch *= s_b + static_cast<double>(k - 1);
    if (k % 2 == 0) continue;
    const cplx c = em_coefficient(k) * poch;
    const ApproxValue t = zeta_tail(w + static_cast<double>(k), N, M);
    acc.value += c * t.value;
    acc.err += std::abs(c) * t.err + rounding_unit * std::abs(c * t.value);
  }
  return acc;
}

std::int64_t grow_cutoff(const DzetaPoint& p, const TruncationPolicy& policy, const char* who,
                         auto budget) {
  std::int64_t N = initial_cutoff(p, policy);
  for (;;) {
    const double b = budget(N);
    if (b <= policy.target) return N;
    if (N >= policy.N_max) {
      throw AccuracyError(std::string(who) + ": truncation bound " + fmt(b) +
                              " above target at N_max",
                          b);
    }
    N = std::min(2 * N, policy.N_max);
  }
}

double sum_abs_power(double sigma, std::int64_t N) {
  double s = 0.0;
  for (std::int64_t m = N; m >= 1; --m) s += std::pow(static_cast<double>(m), -sigma);
  return s;
}

/// A computed sum with a bound on its rounding error.
struct RoundedSum {
  cplx value;
  double err = 0.0;
};

/// sum_{2<=n<=N} (sum_{m<n} m^{-s1}) n^{-s2}, incremental in n. Each power
/// carries relative error power_rounding, which the prefix passes on to every
/// later term.
RoundedSum prefix_weighted_sum(cplx s1, cplx s2, std::int64_t N) {
  const double r1 = power_rounding(s1, static_cast<double>(N));
  const double r2 = power_rounding(s2, static_cast<double>(N));
  CompensatedSum prefix;
  CompensatedSum total;
  double prefix_abs = 0.0;
  double carried = 0.0;
  for (std::int64_t n = 2; n <= N; ++n) {
    const double dn = static_cast<double>(n);
    const cplx a = pow_neg(dn - 1.0, s1);
    const cplx b = pow_neg(dn, s2);
    prefix += a;
    prefix_abs += std::abs(a);
    total += prefix.value() * b;
    carried += std::abs(b) * prefix_abs;
  }
  return {total.value(), r1 * carried + r2 * total.magnitude()};
}

/// sum_{m<=N} m^{-s1} (zetas2 - sum_{n<=m} n^{-s2}), incremental in m.
RoundedSum tail_weighted_sum(cplx s1, cplx s2, cplx zetas2, std::int64_t N) {
  const double r1 = power_rounding(s1, static_cast<double>(N));
  const double r2 = power_rounding(s2, static_cast<double>(N));
  CompensatedSum tail(zetas2);
  CompensatedSum total;
  double removed_abs = 0.0;
  double carried = 0.0;
  for (std::int64_t m = 1; m <= N; ++m) {
    const double dm = static_cast<double>(m);
    const cplx b = pow_neg(dm, s2);
    const cplx a = pow_neg(dm, s1);
    tail -= b;
    removed_abs += std::abs(b);
    total += a * tail.value();
    carried += std::abs(a) * removed_abs;
  }
  return {total.value(), r2 * carried + r1 * total.magnitude()};
}

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

void check_window(double value, double upper, const char* what, const char* who) {
  if (!(value > 1.0 && value < upper)) {
    throw PreconditionError(std::string(who) + ": requires 1 < " + what + " < 2 pi N / C = " +
                            fmt(upper) + ", got " + fmt(value));
  }
}

}  // namespace

std::string_view to_string(SplitChoice c) {
  switch (c) {
    case SplitChoice::brute: return "brute";
    case SplitChoice::v_split: return "v";
    case SplitChoice::u_split: return "u";
    case SplitChoice::approx_t1: return "t1";
    case SplitChoice::approx_t2: return "t2";
    case SplitChoice::approx_diag: return "diag";
    case SplitChoice::auto_select: return "auto";
  }
  return "auto";
}

SplitChoice parse_split(std::string_view name) {
  for (auto c : {SplitChoice::auto_select, SplitChoice::brute, SplitChoice::v_split,
                 SplitChoice::u_split, SplitChoice::approx_t1, SplitChoice::approx_t2,
                 SplitChoice::approx_diag}) {
    if (name == to_string(c)) return c;
  }
  throw DomainError("unknown split '" + std::string(name) +
                    "' (expected auto, brute, v, u, t1, t2 or diag)");
}

bool is_regular(const DzetaPoint& p) {
  const cplx s2 = p.s2.z();
  return std::abs(s2 - 1.0) >= singularity_eps &&
         singular_distance(p.s1.z() + s2) >= singularity_eps;
}

void require_regular(const DzetaPoint& p) {
  const cplx s2 = p.s2.z();
  if (std::abs(s2 - 1.0) < singularity_eps) {
    throw SingularError("zeta_2 is singular at s2 = 1 (|s2 - 1| < " + fmt(singularity_eps) + ")");
  }
  if (singular_distance(p.s1.z() + s2) < singularity_eps) {
    throw SingularError("zeta_2 is singular at s1 + s2 in {2, 1, 0, -2, -4, ...}");
  }
}

DzetaValue dzeta_v_split(const DzetaPoint& p, const TruncationPolicy& policy) {
  const double sig1 = p.s1.sigma;
  const double sig2 = p.s2.sigma;
  if (!(sig1 + sig2 > 1.0)) throw DomainError("v_split: requires sigma1 + sigma2 > 1");
  if (!(sig2 > -2.0 * policy.depth)) {
    throw DomainError("v_split: requires sigma2 > -2l = " + fmt(-2.0 * policy.depth));
  }
  require_regular(p);
  const int M = split_order(policy);
  const cplx s1 = p.s1.z();
  const cplx s2 = p.s2.z();
  const cplx w = s1 + s2;
  const cplx pole = 1.0 / (s2 - 1.0);

  const std::int64_t N = grow_cutoff(p, policy, "v_split", [&](std::int64_t n) {
    return split_budget(s2, w, pole, n, M);
  });

  const ApproxValue z2 = zeta(s2, policy);
  const RoundedSum v1 = tail_weighted_sum(s1, s2, z2.value, N);

  const ApproxValue i1 = zeta_tail(w - 1.0, N, M);
  const ApproxValue i2 = zeta_tail(w, N, M);
  const ApproxValue i3 = bernoulli_tails(s2, w, N, M);
  const cplx value = v1.value + pole * i1.value - 0.5 * i2.value + i3.value;

  double err = split_remainder_bound(s2, sig1 + sig2, N, M);
  err += z2.err * sum_abs_power(sig1, N);
  err += std::abs(pole) * i1.err + 0.5 * i2.err + i3.err;
  err += v1.err + rounding_unit * (std::abs(pole * i1.value) + std::abs(i2.value));

  DzetaValue out;
  out.value = value;
  out.err = err;
  out.split = SplitChoice::v_split;
  out.terms = N;
  return out;
}

DzetaValue dzeta_u_split(const DzetaPoint& p, const TruncationPolicy& policy) {
  const double sig1 = p.s1.sigma;
  const double sig2 = p.s2.sigma;
  if (!(sig2 > 0.0)) throw DomainError("u_split: requires sigma2 > 0");
  if (!(sig1 > -2.0 * policy.depth)) {
    throw DomainError("u_split: requires sigma1 > -2l = " + fmt(-2.0 * policy.depth));
  }
  if (!(sig1 + sig2 > 1.0)) throw DomainError("u_split: requires sigma1 + sigma2 > 1");
  require_regular(p);
  const int M = split_order(policy);
  const cplx s1 = p.s1.z();
  const cplx s2 = p.s2.z();
  const cplx w = s1 + s2;
  const double dist1 = std::abs(s1 - 1.0);
  const bool taylor = dist1 < taylor_eps;
  // Near s1 = 1 the pole factor 1/(1-s1) is cancelled by zeta(s1); the
  // budget only has to cover the tail of zeta(s2 + (s1-1)) at unit scale.
  const cplx pole = taylor ? cplx(1.0) : 1.0 / (1.0 - s1);

  const std::int64_t N = grow_cutoff(p, policy, "u_split", [&](std::int64_t n) {
    return split_budget(s1, w, pole, n, M) + em_remainder_bound(s2, n, M);
  });

  const RoundedSum u1 = prefix_weighted_sum(s1, s2, N);
  const ApproxValue tail2 = zeta_tail(s2, N, M);

  cplx head = 0.0;
  double err = 0.0;
  if (taylor) {
    // zeta(s1) = 1/e + gamma - gamma_1 e + ..., e = s1 - 1, against
    // T(s2 + e) = T + e T' + e^2 T''/2: the poles cancel, leaving
    // gamma T - T' - e (gamma_1 T + T''/2) + O(e^2).
    constexpr double stieltjes1 = -0.0728158454836767;
    constexpr double h = 1e-4;
    const ApproxValue tail2p = zeta_tail_prime(s2, N, M);
    const cplx tail2pp =
        (zeta_tail_prime(s2 + h, N, M).value - zeta_tail_prime(s2 - h, N, M).value) / (2.0 * h);
    const cplx e = s1 - 1.0;
    head = euler_gamma * tail2.value - tail2p.value - e * (stieltjes1 * tail2.value + 0.5 * tail2pp);
    err += euler_gamma * tail2.err + tail2p.err + 10.0 * dist1;
    err += rounding_unit * (std::abs(tail2.value) + std::abs(tail2p.value));
  } else {
    const ApproxValue z1 = zeta_unguarded(s1, policy);
    const ApproxValue i2 = zeta_tail(w - 1.0, N, M);
    const cplx a = z1.value * tail2.value;
    const cplx b = pole * i2.value;
    head = a + b;
    err += std::abs(z1.value) * tail2.err + z1.err * std::abs(tail2.value) + std::abs(pole) * i2.err;
    err += rounding_unit * (std::abs(a) + std::abs(b));
  }
  const ApproxValue i3 = zeta_tail(w, N, M);
  const ApproxValue i4 = bernoulli_tails(s1, w, N, M);
  const cplx value = u1.value + head - 0.5 * i3.value - i4.value;

  err += split_remainder_bound(s1, sig1 + sig2, N, M);
  err += 0.5 * i3.err + i4.err;
  err += u1.err + rounding_unit * std::abs(i3.value);

  DzetaValue out;
  out.value = value;
  out.err = err;
  out.split = SplitChoice::u_split;
  out.terms = N;
  return out;
}

DzetaValue dzeta_approx_t1(const DzetaPoint& p, std::int64_t N, const TruncationPolicy& policy) {
  const double sig1 = p.s1.sigma;
  const double sig2 = p.s2.sigma;
  const double t1 = p.s1.t;
  if (!(sig1 + sig2 > 1.0)) throw DomainError("approx_t1: requires sigma1 + sigma2 > 1");
  if (!(t1 >= 1.0)) throw PreconditionError("approx_t1: requires t1 >= 1, got " + fmt(t1));
  if (N < 1) throw DomainError("approx_t1: N must be >= 1");
  if (!(policy.C > 1.0)) throw DomainError("approx_t1: C must exceed 1");
  check_window(std::abs(t1 + p.s2.t), 2.0 * pi * static_cast<double>(N) / policy.C, "|t1 + t2|",
               "approx_t1");
  require_regular(p);

  const ApproxValue z2 = zeta(p.s2.z(), policy);
  const RoundedSum v1 = tail_weighted_sum(p.s1.z(), p.s2.z(), z2.value, N);
  const double n = static_cast<double>(N);

  DzetaValue out;
  out.value = v1.value;
  out.err = K_ap / t1 * std::pow(n, 2.0 - sig1 - sig2) + z2.err * sum_abs_power(sig1, N) +
            v1.err;
  out.split = SplitChoice::approx_t1;
  out.terms = N;
  return out;
}

DzetaValue dzeta_approx_t2(const DzetaPoint& p, std::int64_t N, const TruncationPolicy& policy) {
  const double sig1 = p.s1.sigma;
  const double sig2 = p.s2.sigma;
  const double t2 = p.s2.t;
  if (!(sig2 >= 0.5)) throw DomainError("approx_t2: requires sigma2 >= 1/2");
  if (!(sig1 + sig2 > 1.0)) throw DomainError("approx_t2: requires sigma1 + sigma2 > 1");
  if (!(static_cast<double>(N) > std::exp(2.0))) {
    throw PreconditionError("approx_t2: requires N > e^2");
  }
  if (!(policy.C > 1.0)) throw DomainError("approx_t2: C must exceed 1");
  const double window = 2.0 * pi * static_cast<double>(N) / policy.C;
  check_window(t2, window, "t2", "approx_t2");
  check_window(std::abs(p.s1.t + t2), window, "|t1 + t2|", "approx_t2");
  require_regular(p);

  const RoundedSum u1 = prefix_weighted_sum(p.s1.z(), p.s2.z(), N);
  const double n = static_cast<double>(N);
  const double lead = std::pow(n, 1.0 - sig2);
  const double trunc = std::abs(p.s1.z() - 1.0) < taylor_eps
                           ? K_ap / t2 * lead * std::log(n)
                           : K_ap / t2 * (lead + std::pow(n, 2.0 - sig1 - sig2));

  DzetaValue out;
  out.value = u1.value;
  out.err = trunc + u1.err;
  out.split = SplitChoice::approx_t2;
  out.terms = N;
  return out;
}

DzetaValue dzeta_approx_diag(double sigma1, double sigma2, double t, const TruncationPolicy&) {
  if (!(sigma1 + sigma2 > 1.0)) throw DomainError("approx_diag: requires sigma1 + sigma2 > 1");
  if (!(sigma2 > 0.0)) throw DomainError("approx_diag: requires sigma2 > 0");
  if (!(t >= 2.0)) throw PreconditionError("approx_diag: requires t >= 2, got " + fmt(t));
  const DzetaPoint p{{sigma1, t}, {sigma2, t}};
  require_regular(p);

  const auto N = static_cast<std::int64_t>(std::floor(t));
  const RoundedSum u1 = prefix_weighted_sum(p.s1.z(), p.s2.z(), N);
  constexpr double eps = 0.05;
  double trunc = 0.0;
  if (near(sigma1, 1.0)) {
    trunc = K_ap * std::pow(t, -sigma2 + eps);
  } else if (sigma1 > 1.0) {
    trunc = K_ap * std::pow(t, -sigma2);
  } else {
    trunc = K_ap * std::pow(t, 1.0 - sigma1 - sigma2);
  }

  DzetaValue out;
  out.value = u1.value;
  out.err = trunc + u1.err;
  out.split = SplitChoice::approx_diag;
  out.terms = N;
  return out;
}

std::int64_t approx_cutoff(const DzetaPoint& p, const TruncationPolicy& policy) {
  const double reach = std::abs(p.s1.t) + std::abs(p.s2.t) + 1.0;
  // Smallest even N with N > C reach / (2 pi).
  const auto half = static_cast<std::int64_t>(std::floor(policy.C * reach / (4.0 * pi))) + 1;
  return std::max<std::int64_t>(2 * half, 8);
}

DzetaValue dzeta(const DzetaPoint& p, SplitChoice choice, const TruncationPolicy& policy,
                 std::int64_t N) {
  require_regular(p);
  if (choice == SplitChoice::auto_select) {
    const double sig1 = p.s1.sigma;
    const double sig2 = p.s2.sigma;
    if (sig2 > 1.0 && sig1 + sig2 > 2.0) {
      choice = SplitChoice::brute;
    } else if (sig2 > 0.0) {
      choice = SplitChoice::u_split;
    } else if (sig1 + sig2 > 1.0) {
      choice = SplitChoice::v_split;
    } else {
      throw DomainError("no evaluator covers sigma1 + sigma2 <= 1 with sigma2 <= 0");
    }
  }
  const std::int64_t cutoff = N > 0 ? N : approx_cutoff(p, policy);
  switch (choice) {
    case SplitChoice::brute: return dzeta_brute(p);
    case SplitChoice::v_split: return dzeta_v_split(p, policy);
    case SplitChoice::u_split: return dzeta_u_split(p, policy);
    case SplitChoice::approx_t1: return dzeta_approx_t1(p, cutoff, policy);
    case SplitChoice::approx_t2: return dzeta_approx_t2(p, cutoff, policy);
    case SplitChoice::approx_diag:
      if (p.s1.t != p.s2.t) throw PreconditionError("approx_diag: requires t1 == t2");
      return dzeta_approx_diag(p.s1.sigma, p.s2.sigma, p.s1.t, policy);
    case SplitChoice::auto_select: break;
  }
  throw DomainError("unresolved split");
}

}  // namespace dzeta
