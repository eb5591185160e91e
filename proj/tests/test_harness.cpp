#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "dzeta/harness.hpp"
#include "dzeta/series.hpp"
#include "dzeta/zeta.hpp"

using namespace dzeta;

namespace {

DirichletPolynomial random_polynomial(std::mt19937_64& rng, int N) {
  std::normal_distribution<double> g;
  DirichletPolynomial p;
  for (int n = 1; n <= N; ++n) p.a.emplace_back(g(rng), g(rng));
  return p;
}

// Composite Simpson of |sum a_n n^{it}|^2 on [0, T]; the phases advance by a
// fixed rotation per step.
double simpson_dirichlet(const DirichletPolynomial& p, double T, double h) {
  const auto steps = static_cast<std::size_t>(std::llround(T / h));
  h = T / static_cast<double>(steps);
  std::vector<cplx> phase(p.a.size(), 1.0);
  std::vector<cplx> rot(p.a.size());
  for (std::size_t n = 0; n < p.a.size(); ++n) {
    rot[n] = std::polar(1.0, h * std::log(static_cast<double>(n + 1)));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k % 1024 == 0) {
      // Re-anchor to keep the recurrence drift negligible.
      const double t = h * static_cast<double>(k);
      for (std::size_t n = 0; n < p.a.size(); ++n) {
        phase[n] = std::polar(1.0, t * std::log(static_cast<double>(n + 1)));
      }
    }
    cplx v = 0.0;
    for (std::size_t n = 0; n < p.a.size(); ++n) v += p.a[n] * phase[n];
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * std::norm(v);
    for (std::size_t n = 0; n < p.a.size(); ++n) phase[n] *= rot[n];
  }
  return sum * h / 3.0;
}

// Fixed-step Simpson of the case's integrand on [2, T].
double simpson_case(const TheoremCase& c, double T, double h) {
  const auto steps = static_cast<std::size_t>(std::llround((T - 2.0) / h));
  h = (T - 2.0) / static_cast<double>(steps);
  double sum = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * mean_square_integrand(c, 2.0 + h * static_cast<double>(k)).value.real();
  }
  return sum * h / 3.0;
}

ComplexPoint cp(double s, double t = 0.0) { return {s, t}; }

}  // namespace

TEST_CASE("dirichlet mean value closed form") {
  DirichletPolynomial one{{1.0}};
  CHECK(dirichlet_mean_exact(one, 7.5) == doctest::Approx(7.5).epsilon(1e-15));
  DirichletPolynomial two{{1.0, 1.0}};
  const double L = std::log(2.0);
  const double expect =
      20.0 + 2.0 * ((std::polar(1.0, 10.0 * L) - 1.0) / cplx(0.0, L)).real();
  CHECK(dirichlet_mean_exact(two, 10.0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(one(3.0) == cplx(1.0));
  CHECK(two.mass() == 2.0);
  CHECK(two.weighted_mass() == 3.0);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 6; ++i) {
    const DirichletPolynomial p = random_polynomial(rng, 10 + 8 * i);
    const double T = 20.0 + 15.0 * i;
    const double exact = dirichlet_mean_exact(p, T);
    CAPTURE(i);
    CHECK(std::abs(exact - simpson_dirichlet(p, T, 1e-3)) <= 1e-8 * exact);
  }
}

TEST_CASE("dirichlet mean value error term stays bounded") {
  std::vector<double> grid;
  for (double T = 10.0; T <= 10000.0 * 1.0001; T *= std::sqrt(10.0)) grid.push_back(T);

  const DirichletBoundReport z = dirichlet_mean_bound_check(DirichletPolynomial{{1.0}}, grid);
  for (const double r : z.ratio) CHECK(r == doctest::Approx(0.0).epsilon(1e-12));

  for (const double e : {1.0, 0.75}) {
    DirichletPolynomial p;
    const int N = e == 1.0 ? 100 : 200;
    for (int n = 1; n <= N; ++n) p.a.emplace_back(std::pow(static_cast<double>(n), -e));
    const DirichletBoundReport r = dirichlet_mean_bound_check(p, grid);
    CAPTURE(e);
    CHECK(r.bounded);
    CHECK(r.ratio.size() == grid.size());
    CHECK(r.max_ratio <= r.analytic_bound);
    CHECK(std::isfinite(r.max_ratio));
  }

  const DirichletBoundReport zero = dirichlet_mean_bound_check(DirichletPolynomial{{0.0, 0.0}}, grid);
  CHECK(zero.max_ratio == 0.0);
  CHECK(zero.bounded);
}

TEST_CASE("theorem cases resolve as stated") {
  struct Row {
    MeanKind k;
    ComplexPoint s1, s2;
    MainForm form;
    double exponent;
    int log_power;
  };
  const Row rows[] = {
      {MeanKind::I1, cp(2.0), cp(1.5, 3.0), MainForm::linear, 0.0, 0},
      {MeanKind::I1, cp(1.0), cp(1.0, 3.0), MainForm::linear, 0.0, 2},
      {MeanKind::I1, cp(0.9), cp(0.9), MainForm::linear, 0.4, 0},
      {MeanKind::I1, cp(1.0), cp(0.5, 3.0), MainForm::t_log_t, 1.0, 0},
      {MeanKind::I2, cp(2.0), cp(2.0), MainForm::linear, 0.0, 0},
      {MeanKind::I2, cp(2.0), cp(0.75), MainForm::linear, 0.5, 0},
      {MeanKind::I2, cp(2.0), cp(1.0), MainForm::linear, 0.0, 2},
      {MeanKind::I2, cp(0.5, 1.0), cp(1.25), MainForm::linear, 0.5, 0},
      {MeanKind::I2, cp(0.5, 1.0), cp(1.5), MainForm::linear, 0.0, 2},
      {MeanKind::I2, cp(1.0), cp(0.75), MainForm::linear, 0.5, 2},
      {MeanKind::I2, cp(1.0), cp(1.0), MainForm::linear, 0.0, 4},
      {MeanKind::I2, cp(2.0), cp(0.5), MainForm::t_log_t, 1.0, 0},
      {MeanKind::I2, cp(0.75, 2.0), cp(0.75), MainForm::t_log_t, 1.0, 0},
      {MeanKind::I2, cp(1.0, 2.0), cp(0.5), MainForm::t_log_t, 1.0, 0},
      {MeanKind::I2, cp(1.0), cp(0.5), MainForm::t_log3, 1.0, 2},
      {MeanKind::Ibox, cp(2.0), cp(2.0), MainForm::linear, 0.0, 0},
      {MeanKind::Ibox, cp(2.0), cp(0.75), MainForm::linear, 0.55, 0},
      {MeanKind::Ibox, cp(1.0), cp(0.8), MainForm::linear, 0.5, 0},  // T^{1/2} dominates
      {MeanKind::Ibox, cp(2.0), cp(0.5), MainForm::comparable, 1.0, 1},
  };
  for (const Row& r : rows) {
    const TheoremCase c = resolve_case(r.k, r.s1, r.s2);
    CAPTURE(c.label);
    CHECK(c.form == r.form);
    CHECK(c.error_exponent == doctest::Approx(r.exponent));
    CHECK(c.log_power == r.log_power);
  }
  CHECK(resolve_case(MeanKind::I2, cp(1.0), cp(0.5)).label == "I2: sigma2=1/2, s1=1");
  // The moving ordinate is dropped.
  CHECK(resolve_case(MeanKind::I1, cp(1.0, 7.0), cp(0.5, 3.0)).s1.t == 0.0);
  CHECK(resolve_case(MeanKind::I2, cp(1.0), cp(0.5, 9.0)).form == MainForm::t_log3);

  CHECK_THROWS_AS(resolve_case(MeanKind::I1, cp(0.7), cp(0.7)), UnsupportedCase);
  CHECK_THROWS_AS(resolve_case(MeanKind::I2, cp(0.5), cp(0.5)), UnsupportedCase);
  CHECK_THROWS_AS(resolve_case(MeanKind::Ibox, cp(0.8), cp(0.6)), UnsupportedCase);
  CHECK_THROWS_AS(resolve_case(MeanKind::Ibox, cp(1.0), cp(0.5)), UnsupportedCase);
}

TEST_CASE("case resolution is total over a lattice") {
  // Coverage predicates written out independently from the theorem statements.
  auto i1 = [](double a, double b, double) { return a + b >= 1.5; };
  auto i2 = [](double a, double b, double t) {
    const double s = a + b;
    const bool one = a == 1.0 && t == 0.0;
    return (b > 1.0 && s > 2.0) || (a > 1.0 && b > 0.5 && b <= 1.0) ||
           (a <= 1.0 && s > 1.5 && s <= 2.0 && !one) || (one && b > 0.5 && b <= 1.0) ||
           (a > 1.0 && b == 0.5) || (s == 1.5 && b > 0.5) || (b == 0.5 && a == 1.0);
  };
  auto box = [](double a, double b, double) {
    const double s = a + b;
    return (b > 1.0 && s > 2.0) || (a > 1.0 && b > 0.5 && b <= 1.0) ||
           (a <= 1.0 && s > 1.5 && s <= 2.0) || (a > 1.0 && b == 0.5);
  };
  int resolved = 0;
  int points = 0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      for (const double t : {0.0, 1.0}) {
        const double a = i / 32.0 + 0.0;  // sigma1 in [0, 1.53]
        const double b = j / 32.0 + 0.25;  // sigma2 in [0.25, 1.78]
        for (const auto& [k, covered] :
             {std::pair{MeanKind::I1, +i1}, std::pair{MeanKind::I2, +i2},
              std::pair{MeanKind::Ibox, +box}}) {
          ++points;
          const bool want = covered(a, b, t);
          bool got = true;
          std::string label;
          try {
            label = resolve_case(k, cp(a, t), cp(b)).label;
            CHECK(resolve_case(k, cp(a, t), cp(b)).label == label);
          } catch (const UnsupportedCase&) {
            got = false;
          }
          if (got != want) {
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(t);
            CAPTURE(to_string(k));
            CHECK(got == want);
          }
          resolved += got ? 1 : 0;
        }
      }
    }
  }
  CHECK(points >= 10000);
  CHECK(resolved > 0);
}

TEST_CASE("main terms") {
  const TheoremCase a = resolve_case(MeanKind::I2, cp(1.0), cp(0.5));
  const Prediction pa = predicted_main(a, 100.0);
  const double L = std::log(100.0);
  CHECK(pa.main == doctest::Approx(100.0 * L * L * L / 3.0));
  CHECK(pa.error_exponent == 1.0);
  CHECK(pa.log_power == 2);

  const TheoremCase b = resolve_case(MeanKind::I1, cp(1.0), cp(1.0, 3.0));
  const Prediction pb = predicted_main(b, 100.0, MainConstant{0.3, 0.0});
  CHECK(pb.main == doctest::Approx(30.0));
  CHECK(pb.error_exponent == 0.0);
  CHECK(pb.log_power == 2);

  const cplx s1(1.0, 2.0);
  const TheoremCase c = resolve_case(MeanKind::I2, s1, cp(0.5));
  const double k = 1.0 / std::norm(s1 - 1.0) + std::norm(zeta(s1).value);
  CHECK(main_constant(c).value == doctest::Approx(k).epsilon(1e-12));
  CHECK(predicted_main(c, 100.0).main == doctest::Approx(k * 100.0 * L).epsilon(1e-12));

  const TheoremCase d = resolve_case(MeanKind::I1, cp(1.0), cp(0.5, 3.0));
  CHECK(main_constant(d).value == doctest::Approx(1.0 / 9.25));  // |s2 - 1|^-2
  CHECK(predicted_main(resolve_case(MeanKind::Ibox, cp(2.0), cp(0.5)), 50.0).two_sided);

  const TheoremCase e = resolve_case(MeanKind::I2, cp(2.0), cp(2.0));
  CHECK(main_constant(e).value == doctest::Approx(series_z22(2.0, 4.0, 1e-12).value).epsilon(1e-10));
}

TEST_CASE("singular paths are refused") {
  const TheoremCase hit = resolve_case(MeanKind::I1, cp(1.0), cp(1.0, -10.0));
  CHECK_THROWS_AS(check_path(hit, 50.0), SingularError);  // s1 + s2 = 2 at t1 = 10
  CHECK_NOTHROW(check_path(hit, 8.0));
  CHECK_THROWS_AS(integrate_mean_square(hit, 50.0), SingularError);
  const TheoremCase two = resolve_case(MeanKind::I2, cp(0.5, -20.0), cp(1.5));
  CHECK_THROWS_AS(check_path(two, 30.0), SingularError);
  CHECK_NOTHROW(check_path(resolve_case(MeanKind::Ibox, cp(1.0), cp(1.0)), 1000.0));
  CHECK_THROWS_AS(integrate_mean_square_grid(resolve_case(MeanKind::Ibox, cp(2.0), cp(2.0)),
                                             {10.0, 5.0}),
                  PreconditionError);
}

TEST_CASE("quadrature against a fixed fine step") {
  const TheoremCase c = resolve_case(MeanKind::Ibox, cp(2.0), cp(2.0));
  QuadPolicy q;
  q.threads = 1;
  const QuadResult r = integrate_mean_square_grid(c, {50.0}, q).front();
  CHECK(r.integral > 0.0);
  const double fine = simpson_case(c, 50.0, 1e-3);
  CHECK(std::abs(r.integral - fine) <= 1e-8 * fine);
  CHECK(std::abs(r.integral - fine) <= r.err + 1e-12 * fine);
}

TEST_CASE("quadrature is thread independent and converges in h0") {
  const TheoremCase c = resolve_case(MeanKind::I1, cp(1.0), cp(0.5, 3.0));
  QuadPolicy one;
  one.threads = 1;
  QuadPolicy three = one;
  three.threads = 3;
  const auto a = integrate_mean_square_grid(c, {10.0, 20.0, 30.0}, one);
  const auto b = integrate_mean_square_grid(c, {10.0, 20.0, 30.0}, three);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].integral == b[i].integral);
    CHECK(a[i].err == b[i].err);
    CHECK(a[i].integral > 0.0);
    if (i > 0) CHECK(a[i].integral > a[i - 1].integral);
  }
  QuadPolicy half = one;
  half.h0 = one.h0 / 2.0;
  const auto h = integrate_mean_square_grid(c, {10.0, 20.0, 30.0}, half);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(h[i].integral - a[i].integral) < 10.0 * a[i].err);
  }
}

TEST_CASE("convergent case grows linearly") {
  const TheoremCase c = resolve_case(MeanKind::I2, cp(2.0), cp(2.0));
  const double k = main_constant(c).value;
  const auto r = integrate_mean_square_grid(c, {25.0, 50.0, 100.0});
  // Differences cancel the integration origin and leave the O(1) term.
  CHECK(std::abs((r[2].integral - r[1].integral) - 50.0 * k) < 1.0);
  CHECK(std::abs((r[1].integral - r[0].integral) - 25.0 * k) < 1.0);
}

TEST_CASE("reports") {
  const std::vector<double> g = default_grid(400.0);
  REQUIRE(g.size() == 9);
  CHECK(g.front() == doctest::Approx(25.0));
  CHECK(g.back() == 400.0);
  for (const double T : {50.0, 100.0, 200.0}) {
    bool found = false;
    for (const double x : g) found = found || std::abs(x - T) < 1e-9;
    CHECK(found);
  }
  CHECK(default_grid(10.0).size() == 3);

  const TheoremCase c = resolve_case(MeanKind::I2, cp(2.0), cp(2.0));
  const MeanSquareReport r = fit_and_verify(c, {25.0, 50.0, 100.0, 200.0});
  CHECK(r.pass);
  CHECK(r.message == "ok");
  CHECK(r.failing_row == -1);
  REQUIRE(r.rows.size() == 4);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const MeanSquareRow& row = r.rows[i];
    CHECK(row.integral >= 0.0);
    CHECK(row.residual == row.integral - row.main);
    CHECK(row.scaled_residual == std::abs(row.residual));
    if (i > 0) CHECK(row.T > r.rows[i - 1].T);
  }

  std::ostringstream csv;
  write_csv(csv, r);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "T,integral,main,residual,scaled_residual,quad_err");
  std::string first;
  std::getline(lines, first);
  CHECK(first.substr(0, 3) == "25,");

  std::ostringstream js;
  write_json(js, r);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["which"] == "I2");
  CHECK(j["main_form"] == "linear");
  CHECK(j["pass"] == true);
  CHECK(j["rows"].size() == 4);
  CHECK(j["rows"][1]["integral"].get<double>() == r.rows[1].integral);
  CHECK(j["band"][1] == "inf");

  for (const double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(NAN) == "nan");
}
