#include <cmath>

#include "doctest.h"
#include "dzeta/zeta.hpp"

using namespace dzeta;

namespace {

// High-precision reference values computed independently (30-digit arithmetic).
struct Ref {
  cplx s;
  cplx value;
};
const Ref zeta_refs[] = {
    {{2.0, 3.0}, {0.79802198514627572062, -0.11374430805293850022}},
    {{-1.5, 2.0}, {0.12424726557777474701, -0.015707749528273202786}},
    {{0.3, -40.0}, {0.7487752095042258384, 1.4408854406344405111}},
    {{0.5, 100.0}, {2.6926198856813240905, -0.020386029602598161771}},
    {{3.0, 0.0}, {1.2020569031595942854, 0.0}},
    {{-3.5, 0.0}, {0.0044410113354794319585, 0.0}},
};
const Ref zeta_prime_refs[] = {
    {{0.5, 10.0}, {-0.36090737309157181656, -0.0035934407356310656235}},
    {{2.0, 0.0}, {-0.9375482543158437537, 0.0}},
    {{-1.0, 3.0}, {0.15094516716871921737, -0.08675809398130911384}},
};

double slack(cplx v) { return 4e-16 * std::max(1.0, std::abs(v)); }

}  // namespace

TEST_CASE("zeta matches reference values within its error bound") {
  for (const auto& r : zeta_refs) {
    CAPTURE(r.s);
    const ApproxValue z = zeta(r.s);
    CHECK(std::abs(z.value - r.value) <= z.err + slack(r.value));
    // Left of the critical strip the direct sum cancels heavily.
    CHECK(std::abs(z.value - r.value) <= (r.s.real() >= 0.0 ? 1e-12 : 1e-10));
  }
  CHECK(zeta(2.0).value.real() == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-15));
  CHECK(zeta(0.0).value.real() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(zeta(-1.0).value.real() == doctest::Approx(-1.0 / 12.0).epsilon(1e-14));
  CHECK(std::abs(zeta(-2.0).value) < 1e-14);
}

TEST_CASE("zeta prime matches reference values") {
  for (const auto& r : zeta_prime_refs) {
    CAPTURE(r.s);
    const ApproxValue z = zeta_prime(r.s);
    CHECK(std::abs(z.value - r.value) <= z.err + slack(r.value));
    CHECK(std::abs(z.value - r.value) <= 1e-11);
  }
}

TEST_CASE("zeta(3) agrees with a direct partial sum plus integral tail") {
  double s = 0.0;
  const int N = 200000;
  for (int n = N; n >= 1; --n) s += 1.0 / (static_cast<double>(n) * n * n);
  // Tail sum_{n>N} n^-3 lies within [1/(2(N+1)^2), 1/(2N^2)].
  const double lo = s + 0.5 / ((N + 1.0) * (N + 1.0));
  const double hi = s + 0.5 / (static_cast<double>(N) * N);
  const double z = zeta(3.0).value.real();
  CHECK(z >= lo - 1e-15);
  CHECK(z <= hi + 1e-15);
}

TEST_CASE("schwarz reflection") {
  for (const cplx s : {cplx(0.5, 14.0), cplx(2.0, -3.0), cplx(-2.5, 7.0)}) {
    const cplx a = zeta(std::conj(s)).value;
    const cplx b = std::conj(zeta(s).value);
    CHECK(std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("euler-maclaurin remainder bound covers the truncation error") {
  const Ref& r = zeta_refs[0];
  for (int M : {3, 5, 9, 15}) {
    for (std::int64_t N : {4, 10, 40}) {
      const ApproxValue z = zeta_em(r.s, {N, M, RemainderMode::bound_only});
      CAPTURE(M);
      CAPTURE(N);
      CHECK(std::abs(z.value - r.value) <= z.err + slack(r.value));
    }
  }
  const ApproxValue coarse = zeta_em(r.s, {4, 5, RemainderMode::bound_only});
  const ApproxValue fine = zeta_em(r.s, {4, 5, RemainderMode::integrate});
  CHECK(std::abs(fine.value - r.value) < 1e-3 * std::abs(coarse.value - r.value));
  CHECK_THROWS_AS(zeta_em(r.s, {4, 4, RemainderMode::bound_only}), DomainError);
}

TEST_CASE("remainder bound decreases with order and cutoff") {
  const cplx s(0.5, 20.0);
  double prev = INFINITY;
  for (std::int64_t N = 32; N <= 1024; N *= 2) {
    const double b = em_remainder_bound(s, N, 9);
    CHECK(b < prev);
    prev = b;
  }
  // At N well above |s| higher order helps.
  prev = INFINITY;
  for (int M = 3; M <= 15; M += 2) {
    const double b = em_remainder_bound(s, 200, M);
    CHECK(b < prev);
    prev = b;
  }
  CHECK(std::isinf(em_remainder_bound(cplx(-10.0, 1.0), 10, 9)));
}

TEST_CASE("t-uniform expansion vanishes at the first zero") {
  const ApproxValue z = zeta_kt(ComplexPoint(0.5, 14.134725141734693), 3);
  CHECK(std::abs(z.value) < 1e-6);
  CHECK(std::abs(z.value) <= z.err + 1e-12);
  const Ref& r = zeta_refs[1];
  const ApproxValue k = zeta_kt(r.s, 3);
  CHECK(std::abs(k.value - r.value) <= k.err + slack(r.value));
  CHECK_THROWS_AS(zeta_kt(ComplexPoint(0.5, 0.5), 3), DomainError);
  CHECK_THROWS_AS(zeta_kt(ComplexPoint(0.5, 10.0), 7), DomainError);
}

TEST_CASE("approximate functional sums respect their windows") {
  const Ref& r = zeta_refs[3];  // 1/2 + 100 i
  const ApproxValue h = zeta_hl(r.s, 400.0);
  CHECK(std::abs(h.value - r.value) <= h.err);
  CHECK(h.err == doctest::Approx(K_hl / 20.0));
  CHECK_THROWS_AS(zeta_hl(r.s, 20.0), PreconditionError);
  CHECK_THROWS_AS(zeta_hl(ComplexPoint(-0.5, 1.0), 100.0), DomainError);

  const Ref& d = zeta_prime_refs[0];  // 1/2 + 10 i
  const ApproxValue p = zeta_prime_hl(d.s, 100.0);
  CHECK(std::abs(p.value - d.value) <= p.err);
  CHECK_THROWS_AS(zeta_prime_hl(d.s, 5.0), PreconditionError);
}

TEST_CASE("zeta tails continue the partial sums") {
  const cplx s(1.5, 4.0);
  const ApproxValue full = zeta(s);
  cplx head = 0.0;
  for (int n = 1; n <= 50; ++n) head += std::exp(-s * std::log(static_cast<double>(n)));
  const ApproxValue tail = zeta_tail(s, 50, 9);
  CHECK(std::abs(head + tail.value - full.value) <= tail.err + full.err + 1e-14);

  // d/ds of the tail against a central difference.
  const double h = 1e-5;
  const cplx diff = (zeta_tail(s + h, 50, 9).value - zeta_tail(s - h, 50, 9).value) / (2.0 * h);
  CHECK(std::abs(zeta_tail_prime(s, 50, 9).value - diff) < 1e-8);
}

TEST_CASE("pole is refused") {
  CHECK_THROWS_AS(zeta(1.0), SingularError);
  CHECK_THROWS_AS(zeta(cplx(1.0, 1e-8)), SingularError);
  CHECK_NOTHROW(zeta(cplx(1.0, 1e-3)));
  CHECK_THROWS_AS(zeta_prime(1.0), SingularError);
}

TEST_CASE("cutoff search doubles until the target") {
  const cplx s(0.5, 50.0);
  const std::int64_t N = em_cutoff(s, 9, 1e-13, 32, 1 << 22);
  CHECK(em_remainder_bound(s, N, 9) <= 1e-13);
  CHECK(em_remainder_bound(s, N / 2, 9) > 1e-13);
}
