#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "dzeta/harness.hpp"
#include "dzeta/numeric.hpp"

namespace dzeta {

namespace {

constexpr double t_start = 2.0;
constexpr double rounding_rel = 1e-15;

bool use_u_split(const DzetaPoint& p) {
  return p.s2.sigma > 0.0 && p.s1.sigma > -4.0 && p.s1.sigma + p.s2.sigma > 1.0;
}

int thread_count(const QuadPolicy& quad) {
  if (quad.threads > 0) return quad.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Evaluates the integrand at every t in static blocks, one per thread.
std::vector<ApproxValue> evaluate_all(const TheoremCase& c, const std::vector<double>& ts,
                                      int threads) {
  std::vector<ApproxValue> out(ts.size());
  const std::size_t n = ts.size();
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](std::size_t w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    try {
      for (std::size_t i = lo; i < hi; ++i) out[i] = mean_square_integrand(c, ts[i]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct Panel {
  std::size_t segment = 0;
  double a = 0.0;
  double w = 0.0;
  int depth = 0;
  std::array<ApproxValue, 5> f;
};

struct Accepted {
  std::size_t segment;
  double a;
  double value;
  double est;
  double eval_err;
};

}  // namespace

ApproxValue mean_square_integrand(const TheoremCase& c, double t) {
  const DzetaPoint p = c.point(t);
  const DzetaValue z = use_u_split(p) ? dzeta_u_split(p) : dzeta_v_split(p);
  const double a = std::abs(z.value);
  return {cplx(a * a), 2.0 * a * z.err + z.err * z.err};
}

std::vector<QuadResult> integrate_mean_square_grid(const TheoremCase& c,
                                                   const std::vector<double>& Tgrid,
                                                   const QuadPolicy& quad) {
  if (Tgrid.empty()) return {};
  if (!(quad.h0 > 0.0) || !(quad.tol > 0.0) || quad.max_depth < 0) {
    throw PreconditionError("quadrature needs h0 > 0, tol > 0 and max_depth >= 0");
  }
  double prev = t_start;
  for (const double T : Tgrid) {
    if (!(T > prev)) throw PreconditionError("T grid must be ascending and above 2");
    prev = T;
  }
  check_path(c, Tgrid.back());
  const int threads = thread_count(quad);

  std::vector<Panel> panels;
  double lo = t_start;
  for (std::size_t s = 0; s < Tgrid.size(); ++s) {
    const double len = Tgrid[s] - lo;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / quad.h0)));
    for (std::size_t i = 0; i < n; ++i) {
      Panel p;
      p.segment = s;
      p.a = lo + len * static_cast<double>(i) / static_cast<double>(n);
      const double b = i + 1 == n ? Tgrid[s] : lo + len * static_cast<double>(i + 1) / n;
      p.w = b - p.a;
      panels.push_back(p);
    }
    lo = Tgrid[s];
  }

  // Shared endpoints are evaluated once: 1 + 4P samples in all.
  {
    std::vector<double> ts;
    ts.reserve(4 * panels.size() + 1);
    for (const Panel& p : panels) {
      for (int j = 0; j < 4; ++j) ts.push_back(p.a + 0.25 * j * p.w);
    }
    ts.push_back(Tgrid.back());
    const std::vector<ApproxValue> f = evaluate_all(c, ts, threads);
    for (std::size_t i = 0; i < panels.size(); ++i) {
      for (int j = 0; j < 5; ++j) panels[i].f[j] = f[4 * i + j];
    }
  }

  std::vector<Accepted> accepted;
  while (!panels.empty()) {
    std::vector<Panel> refine;
    for (const Panel& p : panels) {
      const double f0 = p.f[0].value.real(), f1 = p.f[1].value.real(), f2 = p.f[2].value.real();
      const double f3 = p.f[3].value.real(), f4 = p.f[4].value.real();
      const double s1 = p.w / 6.0 * (f0 + 4.0 * f2 + f4);
      const double s2 = p.w / 12.0 * (f0 + 4.0 * f1 + 2.0 * f2 + 4.0 * f3 + f4);
      const double est = std::abs(s2 - s1) / 15.0;
      if (est > quad.tol * std::abs(s2) && p.depth < quad.max_depth) {
        refine.push_back(p);
        continue;
      }
      double eval_err = 0.0;
      for (const auto& v : p.f) eval_err = std::max(eval_err, v.err);
      accepted.push_back({p.segment, p.a, s2 + (s2 - s1) / 15.0, est, p.w * eval_err});
    }
    if (refine.empty()) break;
    std::vector<double> ts;
    ts.reserve(4 * refine.size());
    for (const Panel& p : refine) {
      for (int j = 0; j < 4; ++j) ts.push_back(p.a + (2 * j + 1) * p.w / 8.0);
    }
    const std::vector<ApproxValue> f = evaluate_all(c, ts, threads);
    panels.clear();
    for (std::size_t i = 0; i < refine.size(); ++i) {
      const Panel& p = refine[i];
      Panel left{p.segment, p.a, 0.5 * p.w, p.depth + 1, {p.f[0], f[4 * i], p.f[1], f[4 * i + 1], p.f[2]}};
      Panel right{p.segment, p.a + 0.5 * p.w, 0.5 * p.w, p.depth + 1,
                  {p.f[2], f[4 * i + 2], p.f[3], f[4 * i + 3], p.f[4]}};
      panels.push_back(left);
      panels.push_back(right);
    }
  }

  std::sort(accepted.begin(), accepted.end(), [](const Accepted& x, const Accepted& y) {
    return x.segment != y.segment ? x.segment < y.segment : x.a < y.a;
  });
  std::vector<QuadResult> out;
  CompensatedSum total;
  double err = 0.0;
  double magnitude = 0.0;
  std::size_t k = 0;
  for (std::size_t s = 0; s < Tgrid.size(); ++s) {
    for (; k < accepted.size() && accepted[k].segment == s; ++k) {
      total += cplx(accepted[k].value);
      err += accepted[k].est + accepted[k].eval_err;
      magnitude += std::abs(accepted[k].value);
    }
    out.push_back({Tgrid[s], total.value().real(), err + rounding_rel * magnitude});
  }
  return out;
}

double integrate_mean_square(const TheoremCase& c, double T, const QuadPolicy& quad) {
  return integrate_mean_square_grid(c, {T}, quad).front().integral;
}

}  // namespace dzeta
