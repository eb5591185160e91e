#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dzeta/dzeta.hpp"
#include "dzeta/types.hpp"

namespace dzeta {

// ---------------------------------------------------------------------------
// Finite Dirichlet polynomials

/// sum_{n<=N} a_n n^{it}; a[0] is a_1.
struct DirichletPolynomial {
  std::vector<cplx> a;

  cplx operator()(double t) const;
  /// sum |a_n|^2 and sum n |a_n|^2.
  double mass() const;
  double weighted_mass() const;
};

/// Closed form of int_0^T |sum a_n n^{it}|^2 dt:
/// T sum |a_n|^2 + sum_{m != n} a_m conj(a_n) ((m/n)^{iT} - 1) / (i log(m/n)).
double dirichlet_mean_exact(const DirichletPolynomial& p, double T);

struct DirichletBoundReport {
  std::vector<double> T;
  /// |exact - T sum |a_n|^2| / sum n |a_n|^2 per grid point.
  std::vector<double> ratio;
  double max_ratio = 0.0;
  /// sum_{m != n} 2 |a_m a_n| / |log(m/n)| / sum n |a_n|^2, a T-free bound on ratio.
  double analytic_bound = 0.0;
  /// Running max over the upper half of the grid stays within 2x its value at the midpoint.
  bool bounded = true;
};

DirichletBoundReport dirichlet_mean_bound_check(const DirichletPolynomial& p,
                                                const std::vector<double>& Tgrid);

// ---------------------------------------------------------------------------
// Theorem cases

enum class MeanKind { I1, I2, Ibox };

std::string_view to_string(MeanKind k);

enum class MainForm {
  linear,         ///< series constant times T
  t_log_t,        ///< constant times T log T
  t_log3,         ///< T (log T)^3 / 3
  comparable      ///< T log T up to two-sided constants
};

/// One mean square along a line together with the case of the theorems it falls in.
///
/// I1 varies t1 with (sigma1, s2) fixed; I2 varies t2 with (s1, sigma2) fixed;
/// Ibox varies t = t1 = t2 with (sigma1, sigma2) fixed. The moving ordinate
/// of s1 or s2 is ignored.
struct TheoremCase {
  MeanKind which = MeanKind::I1;
  ComplexPoint s1;
  ComplexPoint s2;
  std::string label;
  MainForm form = MainForm::linear;
  double error_exponent = 0.0;
  int log_power = 0;

  /// The evaluation point at ordinate t of the moving variable.
  DzetaPoint point(double t) const;
};

/// Resolves the case from the theorem statements; equalities are detected to
/// within 1e-12. Throws UnsupportedCase outside every stated case.
TheoremCase resolve_case(MeanKind which, ComplexPoint s1, ComplexPoint s2);

/// Constant in front of the main term with an error bound. For linear cases
/// this is the matching mean-value series (its tail_bound is the error).
struct MainConstant {
  double value = 0.0;
  double err = 0.0;
};
MainConstant main_constant(const TheoremCase& c);

struct Prediction {
  double main = 0.0;
  double error_exponent = 0.0;
  int log_power = 0;
  /// Set for the comparable case: the main term only holds up to constants.
  bool two_sided = false;
};
Prediction predicted_main(const TheoremCase& c, double T, const MainConstant& k);
Prediction predicted_main(const TheoremCase& c, double T);

/// Throws SingularError when the line from t = 2 to T passes within
/// singularity_eps of the singular set.
void check_path(const TheoremCase& c, double T);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadPolicy {
  double h0 = 0.05;
  /// Panels are bisected until the Richardson estimate is below tol times the panel value.
  double tol = 1e-10;
  int max_depth = 12;
  /// 0 means hardware concurrency.
  int threads = 0;
};

struct QuadResult {
  double T = 0.0;
  double integral = 0.0;
  double err = 0.0;
};

/// |zeta_2|^2 on the case's line at ordinate t, with an error bound.
ApproxValue mean_square_integrand(const TheoremCase& c, double t);

/// int_2^T |zeta_2|^2 for each T of an ascending grid, accumulated panel by
/// panel. Integrand samples run in parallel; the reduction order is fixed so
/// results do not depend on the thread count.
std::vector<QuadResult> integrate_mean_square_grid(const TheoremCase& c,
                                                   const std::vector<double>& Tgrid,
                                                   const QuadPolicy& quad = {});
double integrate_mean_square(const TheoremCase& c, double T, const QuadPolicy& quad = {});

// ---------------------------------------------------------------------------
// Reports

struct MeanSquareRow {
  double T = 0.0;
  double integral = 0.0;
  double main = 0.0;
  double residual = 0.0;
  /// |residual| / (T^error_exponent (log T)^log_power).
  double scaled_residual = 0.0;
  double quad_err = 0.0;
  /// integral / main.
  double ratio = 0.0;
};

struct MeanSquareReport {
  TheoremCase theorem_case;
  MainConstant constant;
  double predicted_exponent = 0.0;
  int predicted_log_power = 0;
  double h0 = 0.0;
  double quad_tol = 0.0;
  std::vector<MeanSquareRow> rows;

  /// Boundedness proxy: the running max of scaled_residual at the last row is
  /// at most 2x its value at the middle row.
  bool bounded = false;
  /// Band on integral/main declared for asymptotic cases; [0, inf] otherwise.
  double band_low = 0.0;
  double band_high = 0.0;
  bool band_ok = true;
  bool pass = false;
  /// First failing row (index into rows) or -1.
  int failing_row = -1;
  std::string message;
};

/// Log-spaced grid Tmax 2^{-k/2}, k = 0..8, dropping points below 4.
std::vector<double> default_grid(double Tmax);

MeanSquareReport fit_and_verify(const TheoremCase& c, const std::vector<double>& Tgrid,
                                const QuadPolicy& quad = {});

void write_csv(std::ostream& os, const MeanSquareReport& r);
void write_json(std::ostream& os, const MeanSquareReport& r);

/// Shortest representation that reads back to the same double.
std::string format_double(double x);

}  // namespace dzeta
