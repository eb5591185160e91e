#pragma once

#include <cstdint>

#include "dzeta/types.hpp"

namespace dzeta {

enum class RemainderMode { bound_only, integrate };

/// Euler-Maclaurin truncation: direct sum to N, expansion of order M (odd, >= 3).
struct EMParams {
  std::int64_t N = 32;
  int M = 9;
  RemainderMode remainder_mode = RemainderMode::bound_only;
};

/// Euler-Maclaurin evaluation of zeta(s) for sigma > -(M-1).
///
/// In bound_only mode the remainder R_{M,N}(s) is dropped and its bound
/// |(s)_M| / M! * sup|B_M| * N^{1-sigma-M} / (sigma+M-1) goes into err. In
/// integrate mode R_{M,N}(s) is computed by 8-point Gauss-Legendre on each unit
/// interval past N until the analytic tail bound falls below 1e-16 |value|.
ApproxValue zeta_em(ComplexPoint s, const EMParams& params);

/// t-uniform expansion with N = max(ceil(|t|/4) + 1, N_min) and M = 2m+1.
/// Requires |t| > 1 and sigma > -2m-1.
ApproxValue zeta_kt(ComplexPoint s, int m, const TruncationPolicy& policy = {});

/// sum_{n<=x} n^{-s} - x^{1-s}/(1-s), err = K_hl x^{-sigma}.
/// Requires sigma > 0, x >= 1 and |t| <= 2 pi x / C.
ApproxValue zeta_hl(ComplexPoint s, double x, const TruncationPolicy& policy = {});

/// -sum_{n<=x} n^{-s} log n - x^{1-s} log x/(s-1) - x^{1-s}/(s-1)^2,
/// err = K_hl x^{-sigma} log x. Requires sigma > 0, x >= exp(1/sigma) and
/// |t| < 2 pi x / C.
ApproxValue zeta_prime_hl(ComplexPoint s, double x, const TruncationPolicy& policy = {});

// Building blocks shared with the double zeta evaluators.

/// |(s)_M| / M! * sup|B_M| * N^{1-sigma-M} / (sigma+M-1); infinite when
/// sigma + M - 1 <= 0.
double em_remainder_bound(cplx s, std::int64_t N, int M);

/// Continued tail sum_{n>N} n^{-s} = zeta(s) - sum_{n<=N} n^{-s}, from the
/// Euler-Maclaurin boundary terms with bound_only remainder. s != 1.
ApproxValue zeta_tail(cplx s, std::int64_t N, int M);

/// d/ds of zeta_tail, i.e. -sum_{n>N} n^{-s} log n continued.
ApproxValue zeta_tail_prime(cplx s, std::int64_t N, int M);

/// zeta(s) with N grown from max(N_min, |s|) until the remainder bound meets
/// policy.target. For sigma < 0, N starts at max(|s|, 4) and stops growing once
/// the rounding of the direct sum would outweigh the gain. Refuses |s-1| < singularity_eps.
ApproxValue zeta(cplx s, const TruncationPolicy& policy = {});

/// Same as zeta() without the pole guard; callers handle the cancellation.
ApproxValue zeta_unguarded(cplx s, const TruncationPolicy& policy = {});

/// zeta'(s) by differentiating the Euler-Maclaurin expansion term by term.
ApproxValue zeta_prime(cplx s, const TruncationPolicy& policy = {});

/// Smallest N >= start (doubling) with em_remainder_bound(s, N, M) <= target,
/// capped at N_max.
std::int64_t em_cutoff(cplx s, int M, double target, std::int64_t start, std::int64_t N_max);

}  // namespace dzeta
