// Acceptance run: one pass/fail line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dzeta/dzeta.hpp"
#include "dzeta/harness.hpp"
#include "dzeta/series.hpp"
#include "dzeta/zeta.hpp"

using namespace dzeta;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string timed(const Clock& c, double limit) {
  return num(c.seconds(), 3) + " s (limit " + num(limit) + " s)";
}

// 1. v and u against brute on random convergent points.
Outcome oracle_equivalence() {
  const Clock clock;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> sig2(1.1, 3.0), sum(2.1, 5.0), ord(-20.0, 20.0);
  double worst_v = 0.0, worst_u = 0.0;
  bool within_err = true;
  for (int i = 0; i < 100; ++i) {
    const double b = sig2(rng);
    const double s = sum(rng);
    const double t1 = ord(rng), t2 = ord(rng);
    const DzetaPoint p{{s - b, t1}, {b, t2}};
    const DzetaValue ref = dzeta_brute(p);
    const DzetaValue v = dzeta_v_split(p);
    const DzetaValue u = dzeta_u_split(p);
    const double dv = std::abs(v.value - ref.value);
    const double du = std::abs(u.value - ref.value);
    worst_v = std::max(worst_v, dv);
    worst_u = std::max(worst_u, du);
    within_err = within_err && dv <= v.err + ref.err && du <= u.err + ref.err;
  }
  const double limit = 60.0;
  const bool pass = worst_v <= 1e-9 && worst_u <= 1e-9 && within_err && clock.seconds() <= limit;
  return {pass, "100 points, max |v-brute| " + num(worst_v) + ", max |u-brute| " + num(worst_u) +
                    " (tol 1e-9), inside combined err: " + (within_err ? "yes" : "no") + ", " +
                    timed(clock, limit)};
}

// 2. zeta2(s1,s2) + zeta2(s2,s1) + zeta(s1+s2) = zeta(s1) zeta(s2).
Outcome stuffle() {
  const Clock clock;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> sig(0.3, 3.0), ord(-20.0, 20.0);
  double worst = 0.0;
  int convergent = 0, continued = 0;
  while (convergent + continued < 50) {
    const cplx s1(sig(rng), ord(rng));
    const cplx s2(sig(rng), ord(rng));
    const DzetaPoint p{s1, s2};
    const DzetaPoint q{s2, s1};
    if (!(s1.real() + s2.real() > 1.1) || !is_regular(p) || !is_regular(q)) continue;
    if (std::abs(s1 - 1.0) < 0.05 || std::abs(s2 - 1.0) < 0.05) continue;
    const bool both =
        s1.real() > 1.0 && s2.real() > 1.0 && s1.real() + s2.real() > 2.0;
    // Keep the two kinds balanced.
    if (both ? convergent >= 25 : continued >= 25) continue;
    (both ? convergent : continued) += 1;
    const cplx lhs = dzeta::dzeta(p).value + dzeta::dzeta(q).value + zeta(s1 + s2).value;
    worst = std::max(worst, std::abs(lhs - zeta(s1).value * zeta(s2).value));
  }
  const double limit = 60.0;
  return {worst <= 1e-8 && clock.seconds() <= limit,
          "50 points (" + std::to_string(convergent) + " convergent, " +
              std::to_string(continued) + " continued), max defect " + num(worst) +
              " (tol 1e-8), " + timed(clock, limit)};
}

// 3. pi^4/120 and zeta(3) via every evaluator that applies at real points.
Outcome known_values() {
  const double a = std::pow(pi, 4) / 120.0;
  const double b = 1.2020569031595942854;
  double worst = 0.0;
  for (const SplitChoice c : {SplitChoice::brute, SplitChoice::v_split, SplitChoice::u_split,
                              SplitChoice::auto_select}) {
    worst = std::max(worst, std::abs(dzeta::dzeta({2.0, 2.0}, c).value - a));
    worst = std::max(worst, std::abs(dzeta::dzeta({1.0, 2.0}, c).value - b));
  }
  return {worst <= 1e-10, "brute, v, u, auto at (2,2) and (1,2), max error " + num(worst) +
                              " (tol 1e-10; the t-window formulas need |t| > 1)"};
}

// Composite Simpson of |sum a_n n^{it}|^2 on [0, T] with step about h.
double simpson_dirichlet(const DirichletPolynomial& p, double T, double h) {
  const auto steps = 2 * static_cast<std::size_t>(std::ceil(T / h / 2.0));
  h = T / static_cast<double>(steps);
  std::vector<cplx> phase(p.a.size()), rot(p.a.size());
  for (std::size_t n = 0; n < p.a.size(); ++n) {
    rot[n] = std::polar(1.0, h * std::log(static_cast<double>(n + 1)));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k % 1024 == 0) {
      const double t = h * static_cast<double>(k);
      for (std::size_t n = 0; n < p.a.size(); ++n) {
        phase[n] = std::polar(1.0, t * std::log(static_cast<double>(n + 1)));
      }
    }
    cplx v = 0.0;
    for (std::size_t n = 0; n < p.a.size(); ++n) v += p.a[n] * phase[n];
    sum += ((k == 0 || k == steps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0)) * std::norm(v);
    for (std::size_t n = 0; n < p.a.size(); ++n) phase[n] *= rot[n];
  }
  return sum * h / 3.0;
}

// 4. Closed form against quadrature, and its error term against T.
Outcome dirichlet_oracle() {
  const Clock clock;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> len(1, 50);
  std::uniform_real_distribution<double> horizon(10.0, 100.0);
  std::normal_distribution<double> g;
  std::vector<double> grid;
  for (int k = 0; k <= 24; ++k) grid.push_back(10.0 * std::pow(10.0, k / 8.0));
  double worst_rel = 0.0;
  double worst_bound = 0.0;
  bool bounded = true;
  for (int i = 0; i < 20; ++i) {
    DirichletPolynomial p;
    const int N = len(rng);
    for (int n = 0; n < N; ++n) p.a.emplace_back(g(rng), g(rng));
    const double T = horizon(rng);
    const double exact = dirichlet_mean_exact(p, T);
    worst_rel = std::max(worst_rel, std::abs(exact - simpson_dirichlet(p, T, 1e-3)) / exact);
    const DirichletBoundReport r = dirichlet_mean_bound_check(p, grid);
    bounded = bounded && r.bounded && r.max_ratio <= r.analytic_bound;
    worst_bound = std::max(worst_bound, r.max_ratio);
  }
  const double limit = 120.0;
  return {worst_rel <= 1e-8 && bounded && clock.seconds() <= limit,
          "20 polynomials, max relative gap " + num(worst_rel) +
              " (tol 1e-8), error ratio running max settles on [10, 1e4]: " +
              (bounded ? "yes" : "no") + " (largest " + num(worst_bound) + "), " +
              timed(clock, limit)};
}

// Running max grows by less than 2x from each step to the next.
bool doubling_ok(const std::vector<double>& per_step, double& growth) {
  double running = 0.0;
  growth = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < per_step.size(); ++i) {
    const double next = std::max(running, per_step[i]);
    if (i > 0) {
      growth = std::max(growth, next / running);
      ok = ok && next < 2.0 * running;
    }
    running = next;
  }
  return ok;
}

// 5. Residual scaling of the truncated approximations.
Outcome residual_scaling() {
  const Clock clock;
  std::ostringstream d;
  bool pass = true;
  const std::vector<std::int64_t> Ns = {64, 128, 256};

  // First variable; t2 = -3 keeps |t1 + t2| inside the N = 64 window at t1 = 200.
  for (const double a : {1.0, 0.75}) {
    const double b = a;
    std::vector<double> per_N;
    for (const std::int64_t N : Ns) {
      double m = 0.0;
      for (const double t1 : {50.0, 100.0, 200.0}) {
        const DzetaPoint p{{a, t1}, {b, -3.0}};
        const double r = std::abs(dzeta_approx_t1(p, N).value - dzeta_v_split(p).value);
        m = std::max(m, r * t1 * std::pow(static_cast<double>(N), a + b - 2.0));
      }
      per_N.push_back(m);
    }
    double g = 0.0;
    const bool ok = doubling_ok(per_N, g);
    pass = pass && ok;
    d << "t1(" << a << "," << b << ") x" << num(g, 2) << (ok ? "" : " FAIL") << "; ";
  }

  // Second variable, both branches.
  for (const double s1 : {2.0, 1.0}) {
    const double b = 0.8;
    std::vector<double> per_N;
    for (const std::int64_t N : Ns) {
      const double n = static_cast<double>(N);
      const double scale = s1 == 1.0 ? std::pow(n, 1.0 - b) * std::log(n)
                                     : std::pow(n, 1.0 - b) + std::pow(n, 2.0 - s1 - b);
      double m = 0.0;
      for (const double t2 : {50.0, 100.0, 200.0}) {
        const DzetaPoint p{s1, {b, t2}};
        const double r = std::abs(dzeta_approx_t2(p, N).value - dzeta_u_split(p).value);
        m = std::max(m, r * t2 / scale);
      }
      per_N.push_back(m);
    }
    double g = 0.0;
    const bool ok = doubling_ok(per_N, g);
    pass = pass && ok;
    d << "t2(s1=" << s1 << ") x" << num(g, 2) << (ok ? "" : " FAIL") << "; ";
  }

  // Diagonal, one case per sign of sigma1 - 1; blocks of 8 ordinates per t0.
  const double eps = 0.05;
  for (const double a : {1.5, 1.0, 0.8}) {
    const double b = 0.6;
    const double e = a > 1.0 ? -b : (a == 1.0 ? -b + eps : 1.0 - a - b);
    std::vector<double> per_t;
    for (const double t0 : {50.0, 100.0, 200.0}) {
      double m = 0.0;
      for (int j = 0; j < 8; ++j) {
        const double t = t0 + 0.37 * j;
        const DzetaPoint p{{a, t}, {b, t}};
        const double r = std::abs(dzeta_approx_diag(a, b, t).value - dzeta_u_split(p).value);
        m = std::max(m, r / std::pow(t, e));
      }
      per_t.push_back(m);
    }
    double g = 0.0;
    const bool ok = doubling_ok(per_t, g);
    pass = pass && ok;
    d << "diag(" << a << "," << b << ") x" << num(g, 2) << (ok ? "" : " FAIL") << "; ";
  }
  const double limit = 300.0;
  pass = pass && clock.seconds() <= limit;
  return {pass, "running-max growth per doubling (must be < 2): " + d.str() + timed(clock, limit)};
}

std::string ratios(const MeanSquareReport& r, const std::vector<double>& Ts) {
  std::string s;
  for (const double T : Ts) {
    for (const auto& row : r.rows) {
      if (std::abs(row.T - T) < 1e-9) s += " " + num(T) + ":" + num(row.ratio, 4);
    }
  }
  return s;
}

const MeanSquareRow* row_at(const MeanSquareReport& r, double T) {
  for (const auto& row : r.rows) {
    if (std::abs(row.T - T) < 1e-9) return &row;
  }
  return nullptr;
}

// 6. Convergent I2: residual against the series constant stays bounded.
Outcome convergent_mean() {
  const Clock clock;
  const TheoremCase c = resolve_case(MeanKind::I2, 2.0, 2.0);
  const MeanSquareReport r = fit_and_verify(c, default_grid(400.0));
  std::string res;
  for (const double T : {25.0, 50.0, 100.0, 200.0, 400.0}) {
    if (const MeanSquareRow* row = row_at(r, T)) res += " " + num(T) + ":" + num(row->residual);
  }
  const double limit = 600.0;
  const bool pass = r.bounded && r.constant.err <= 1e-8 && clock.seconds() <= limit;
  return {pass, "constant " + num(r.constant.value, 12) + " (tail " + num(r.constant.err) +
                    "), residuals" + res + ", running max within 2x: " +
                    (r.bounded ? "yes" : "no") + ", " + timed(clock, limit)};
}

// 7. I1 on sigma1 + sigma2 = 3/2 against |s2 - 1|^-2 T log T.
Outcome critical_line() {
  const TheoremCase c = resolve_case(MeanKind::I1, 1.0, {0.5, 3.0});
  const MeanSquareReport r = fit_and_verify(c, default_grid(400.0));
  const std::size_t n = r.rows.size();
  const double last = r.rows.back().ratio;
  const bool in_band = std::abs(last - 1.0) <= 0.25;
  bool monotone = true;
  for (std::size_t i = n - 2; i < n; ++i) {
    monotone = monotone && std::abs(r.rows[i].ratio - 1.0) <= std::abs(r.rows[i - 1].ratio - 1.0);
  }
  std::string top;
  for (std::size_t i = n - 3; i < n; ++i) top += " " + num(r.rows[i].T) + ":" + num(r.rows[i].ratio, 4);
  return {in_band && monotone, "ratio at T=400 " + num(last, 4) + " (band [0.75, 1.25]: " +
                                   (in_band ? "in" : "out") + "), top three" + top +
                                   ", |ratio-1| shrinking: " + (monotone ? "yes" : "no")};
}

// 8. I2 at s1 = 1, sigma2 = 1/2 against T (log T)^3 / 3.
Outcome double_critical() {
  const TheoremCase c = resolve_case(MeanKind::I2, 1.0, 0.5);
  const MeanSquareReport r = fit_and_verify(c, default_grid(400.0));
  bool in_band = true;
  bool shrinking = true;
  double prev = INFINITY;
  for (const double T : {100.0, 200.0, 400.0}) {
    const MeanSquareRow* row = row_at(r, T);
    if (row == nullptr) return {false, "grid misses T=" + num(T)};
    in_band = in_band && row->ratio >= 0.5 && row->ratio <= 2.0;
    const double dev = std::abs(std::log(row->ratio));
    shrinking = shrinking && dev <= prev;
    prev = dev;
  }
  return {in_band && shrinking, "ratios" + ratios(r, {100.0, 200.0, 400.0}) + " (band [0.5, 2]: " +
                                    (in_band ? "in" : "out") + "), |log ratio| shrinking: " +
                                    (shrinking ? "yes" : "no")};
}

// 9. Ibox at (2, 1/2): two-sided band calibrated at T = 50.
Outcome comparable() {
  const TheoremCase c = resolve_case(MeanKind::Ibox, 2.0, 0.5);
  const MeanSquareReport r = fit_and_verify(c, default_grid(400.0));
  const MeanSquareRow* base = row_at(r, 50.0);
  if (base == nullptr) return {false, "grid misses T=50"};
  const double rho = base->ratio;
  const double k = 2.0 * std::max(rho, 1.0 / rho);
  bool in_band = true;
  for (const double T : {100.0, 200.0, 400.0}) {
    const MeanSquareRow* row = row_at(r, T);
    in_band = in_band && row != nullptr && row->ratio >= 1.0 / k && row->ratio <= k;
  }
  return {in_band, "ratio at T=50 " + num(rho, 4) + ", c = " + num(k, 4) + ", ratios" +
                       ratios(r, {100.0, 200.0, 400.0}) + " inside [1/c, c]: " +
                       (in_band ? "yes" : "no")};
}

// 10. Region gate for the box series and the divisor sieve.
Outcome region_gates() {
  int mismatches = 0;
  int boundary = 0;
  int points = 0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      // Dyadic steps put sigma2 = 1/2 and sigma1 + sigma2 = 1 exactly on the lattice.
      const double a = -1.0 + i / 32.0;
      const double b = -0.5 + j / 32.0;
      ++points;
      const bool want = b > 0.5 && a + b > 1.0;
      if (b == 0.5 || a + b == 1.0) ++boundary;
      bool accepted = true;
      try {
        series_z2box(a, b, 16);
      } catch (const DomainError&) {
        accepted = false;
      }
      if (region_check(SeriesKind::z2box, a, b) != want || accepted != want) ++mismatches;
    }
  }
  const DivisorTable table(10000);
  int sieve_bad = 0;
  for (std::int64_t k = 2; k <= 10000; ++k) {
    std::vector<std::int32_t> expect;
    for (std::int64_t m = 1; m * m < k; ++m) {
      if (k % m == 0) expect.push_back(static_cast<std::int32_t>(m));
    }
    const auto row = table.row(k);
    if (!std::equal(row.begin(), row.end(), expect.begin(), expect.end())) ++sieve_bad;
  }
  return {mismatches == 0 && sieve_bad == 0,
          std::to_string(points) + " lattice points (" + std::to_string(boundary) +
              " on the boundary), " + std::to_string(mismatches) +
              " region mismatches; sieve rows differing from trial division for k <= 1e4: " +
              std::to_string(sieve_bad)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria of the dzeta library", "acceptance"};
  std::vector<int> only;
  app.add_option("--only", only, "run only these criteria (1..10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"stuffle identity", stuffle},
      {"known values", known_values},
      {"dirichlet mean value oracle", dirichlet_oracle},
      {"approximation residual scaling", residual_scaling},
      {"I2 convergent case", convergent_mean},
      {"I1 critical line T log T", critical_line},
      {"I2 double-critical T log^3 T / 3", double_critical},
      {"Ibox comparable to T log T", comparable},
      {"series region gates and sieve", region_gates},
  };
  const std::set<int> chosen(only.begin(), only.end());
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!chosen.empty() && !chosen.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << "C" << id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
