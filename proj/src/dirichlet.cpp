#include <algorithm>
#include <cmath>

#include "dzeta/harness.hpp"
#include "dzeta/numeric.hpp"

namespace dzeta {

cplx DirichletPolynomial::operator()(double t) const {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * std::exp(cplx(0.0, t * std::log(static_cast<double>(i + 1))));
  }
  return s.value();
}

double DirichletPolynomial::mass() const {
  double s = 0.0;
  for (const cplx& x : a) s += std::norm(x);
  return s;
}

double DirichletPolynomial::weighted_mass() const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(i + 1) * std::norm(a[i]);
  return s;
}

double dirichlet_mean_exact(const DirichletPolynomial& p, double T) {
  // Pairs (m, n) and (n, m) are conjugate, so only m < n is summed.
  CompensatedSum cross;
  const std::size_t N = p.a.size();
  for (std::size_t m = 0; m < N; ++m) {
    if (p.a[m] == cplx(0.0)) continue;
    const double logm = std::log(static_cast<double>(m + 1));
    for (std::size_t n = m + 1; n < N; ++n) {
      const double l = logm - std::log(static_cast<double>(n + 1));
      const cplx phase = std::exp(cplx(0.0, T * l)) - 1.0;
      cross += p.a[m] * std::conj(p.a[n]) * phase / cplx(0.0, l);
    }
  }
  return T * p.mass() + 2.0 * cross.value().real();
}

DirichletBoundReport dirichlet_mean_bound_check(const DirichletPolynomial& p,
                                                const std::vector<double>& Tgrid) {
  DirichletBoundReport r;
  r.T = Tgrid;
  const double weight = p.weighted_mass();
  const std::size_t N = p.a.size();
  for (std::size_t m = 0; m < N; ++m) {
    for (std::size_t n = m + 1; n < N; ++n) {
      const double l = std::log(static_cast<double>(n + 1) / static_cast<double>(m + 1));
      r.analytic_bound += 4.0 * std::abs(p.a[m] * p.a[n]) / l;
    }
  }
  if (weight > 0.0) r.analytic_bound /= weight;

  std::vector<double> running;
  for (const double T : Tgrid) {
    const double q =
        weight > 0.0 ? std::abs(dirichlet_mean_exact(p, T) - T * p.mass()) / weight : 0.0;
    r.ratio.push_back(q);
    r.max_ratio = std::max(r.max_ratio, q);
    running.push_back(r.max_ratio);
  }
  if (!running.empty()) {
    const double mid = running[(running.size() - 1) / 2];
    r.bounded = running.back() <= 2.0 * mid;
  }
  return r;
}

}  // namespace dzeta
