#pragma once

#include <cstdint>
#include <string_view>

#include "dzeta/types.hpp"

namespace dzeta {

/// Argument pair (s1, s2) of zeta_2(s1, s2) = sum_{1<=m<n} m^{-s1} n^{-s2}.
struct DzetaPoint {
  ComplexPoint s1;
  ComplexPoint s2;

  DzetaPoint conj() const { return {s1.conj(), s2.conj()}; }
};

enum class SplitChoice { brute, v_split, u_split, approx_t1, approx_t2, approx_diag, auto_select };

std::string_view to_string(SplitChoice c);

/// Accepts auto, brute, v, u, t1, t2, diag; throws DomainError otherwise.
SplitChoice parse_split(std::string_view name);

struct DzetaValue : ApproxValue {
  SplitChoice split = SplitChoice::auto_select;
  /// Truncation length of the outer sum (largest partial sum index for brute).
  std::int64_t terms = 0;
};

/// |s2 - 1| >= singularity_eps and s1 + s2 keeps that distance from {2, 1, 0, -2, -4, ...}.
bool is_regular(const DzetaPoint& p);

/// Throws SingularError naming the offending set when !is_regular(p).
void require_regular(const DzetaPoint& p);

/// Triangular summation of the defining series, for sigma2 > 1 and sigma1 + sigma2 > 2.
///
/// Partial sums S(L) over n <= L are accumulated directly. When an integral
/// bound on the omitted part meets tol it is returned as is; otherwise the
/// limit is extrapolated from S(L) sampled on [L0, 1024 L0] by least squares on
/// the known tail exponents L^{-(s2-1+j)} and L^{-(s1+s2-2+j)}, and err is the
/// spread between fits of different order and sample subsets.
DzetaValue dzeta_brute(const DzetaPoint& p, double tol = 1e-10);

/// Outer sum over m <= N against Euler-Maclaurin tails of the inner sum; the
/// part m > N is expanded into zeta tails. Needs sigma1 + sigma2 > 1 and
/// sigma2 > -2 policy.depth.
DzetaValue dzeta_v_split(const DzetaPoint& p, const TruncationPolicy& policy = {});

/// Outer sum over n <= N of prefix sums in s1, the part n > N expanded via the
/// Euler-Maclaurin form of the prefix sum. Needs sigma2 > 0, sigma1 > -2 depth
/// and sigma1 + sigma2 > 1. Uses the gamma branch when |s1 - 1| < taylor_eps.
DzetaValue dzeta_u_split(const DzetaPoint& p, const TruncationPolicy& policy = {});

/// sum_{m<=N} m^{-s1} (zeta(s2) - sum_{n<=m} n^{-s2}), err = K_ap N^{2-sigma1-sigma2} / t1.
/// Requires sigma1 + sigma2 > 1, t1 >= 1 and 1 < |t1 + t2| < 2 pi N / C.
DzetaValue dzeta_approx_t1(const DzetaPoint& p, std::int64_t N, const TruncationPolicy& policy = {});

/// sum_{2<=n<=N} (sum_{m<n} m^{-s1}) n^{-s2}. Requires sigma2 >= 1/2,
/// sigma1 + sigma2 > 1, t2 >= 1, N > e^2, and both 1 < t2 and 1 < |t1 + t2|
/// below 2 pi N / C.
DzetaValue dzeta_approx_t2(const DzetaPoint& p, std::int64_t N, const TruncationPolicy& policy = {});

/// Diagonal s1 = sigma1 + it, s2 = sigma2 + it, truncated at n <= t.
/// Requires sigma1 + sigma2 > 1, sigma2 > 0, t >= 2.
DzetaValue dzeta_approx_diag(double sigma1, double sigma2, double t,
                             const TruncationPolicy& policy = {});

/// Smallest even N with |t1| + |t2| + 1 < 2 pi N / C, used for the approximate
/// formulas when no N is given.
std::int64_t approx_cutoff(const DzetaPoint& p, const TruncationPolicy& policy = {});

/// Evaluates with the requested split. auto_select picks brute when
/// sigma2 > 1 and sigma1 + sigma2 > 2, else u_split when sigma2 > 0, else
/// v_split when sigma1 + sigma2 > 1, else throws DomainError. For the
/// approximate formulas N <= 0 means approx_cutoff(p, policy); approx_diag uses
/// (sigma1, sigma2, t1) and requires t1 == t2.
DzetaValue dzeta(const DzetaPoint& p, SplitChoice choice = SplitChoice::auto_select,
                 const TruncationPolicy& policy = {}, std::int64_t N = 0);

}  // namespace dzeta
