#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dzeta {

using cplx = std::complex<double>;

/// A point s = sigma + i t of the complex plane.
struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;

  constexpr ComplexPoint() = default;
  constexpr ComplexPoint(double sigma_, double t_ = 0.0) : sigma(sigma_), t(t_) {}
  ComplexPoint(cplx z) : sigma(z.real()), t(z.imag()) {}

  cplx z() const { return {sigma, t}; }
  operator cplx() const { return z(); }
  ComplexPoint conj() const { return {sigma, -t}; }
};

/// A complex value together with an absolute error bound on |value - truth|.
struct ApproxValue {
  cplx value{};
  double err = 0.0;
};

/// Cutoff parameters shared by the series evaluators.
///
/// `C` is the constant of the Hardy-Littlewood windows |t| < 2 pi N / C and
/// must exceed 1. `M` is the Euler-Maclaurin order used for internal tails;
/// `depth` is the continuation depth l (split formulas need sigma > -2l).
/// `target` is the absolute truncation bound the adaptive evaluators aim for
/// before rounding is added; `N_max` caps every adaptive truncation.
struct TruncationPolicy {
  double C = 2.0;
  std::int64_t N_min = 32;
  int M = 9;
  int depth = 2;
  double target = 1e-13;
  std::int64_t N_max = std::int64_t{1} << 22;
};

inline constexpr double singularity_eps = 1e-6;
inline constexpr double taylor_eps = 1e-9;
inline constexpr double euler_gamma = 0.57721566490153286;
inline constexpr double pi = 3.14159265358979323846;

/// Stand-ins for the unnamed O-constants of the approximate formulas.
inline constexpr double K_hl = 10.0;
inline constexpr double K_ap = 10.0;

// Error hierarchy. The CLI maps SingularError to exit code 3 and every other
// Error to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside the region where a formula is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Hypothesis of an approximate formula violated (t-window, t >= 2, ...).
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Requested accuracy not reachable under the active caps.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Evaluation within singularity_eps of a pole or of the singular set.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Parameters that no theorem case covers.
class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

}  // namespace dzeta
