#include <algorithm>
#include <cmath>
#include <string>

#include "dzeta/harness.hpp"
#include "dzeta/series.hpp"
#include "dzeta/zeta.hpp"

namespace dzeta {

namespace {

constexpr double boundary_tol = 1e-12;
constexpr double box_eps = 0.05;
constexpr double series_tol = 1e-10;

bool eq(double a, double b) { return std::abs(a - b) < boundary_tol; }
bool gt(double a, double b) { return a > b && !eq(a, b); }
bool le(double a, double b) { return !gt(a, b); }

TheoremCase make(MeanKind which, ComplexPoint s1, ComplexPoint s2, std::string label, MainForm form,
                 double exponent, int log_power) {
  TheoremCase c;
  c.which = which;
  c.s1 = s1;
  c.s2 = s2;
  c.label = std::move(label);
  c.form = form;
  c.error_exponent = exponent;
  c.log_power = log_power;
  return c;
}

TheoremCase resolve_i1(ComplexPoint s1, ComplexPoint s2) {
  const double sum = s1.sigma + s2.sigma;
  const auto k = MeanKind::I1;
  if (gt(sum, 2.0)) return make(k, s1, s2, "I1: sigma1+sigma2>2", MainForm::linear, 0.0, 0);
  if (eq(sum, 2.0)) return make(k, s1, s2, "I1: sigma1+sigma2=2", MainForm::linear, 0.0, 2);
  if (gt(sum, 1.5)) {
    return make(k, s1, s2, "I1: 3/2<sigma1+sigma2<2", MainForm::linear, 4.0 - 2.0 * sum, 0);
  }
  if (eq(sum, 1.5)) return make(k, s1, s2, "I1: sigma1+sigma2=3/2", MainForm::t_log_t, 1.0, 0);
  throw UnsupportedCase("I1: no case covers sigma1 + sigma2 < 3/2");
}

TheoremCase resolve_i2(ComplexPoint s1, ComplexPoint s2) {
  const double sig1 = s1.sigma;
  const double sig2 = s2.sigma;
  const double sum = sig1 + sig2;
  const bool s1_is_one = eq(sig1, 1.0) && eq(s1.t, 0.0);
  const auto k = MeanKind::I2;
  if (gt(sig2, 1.0) && gt(sum, 2.0)) {
    return make(k, s1, s2, "I2: sigma2>1, sigma1+sigma2>2", MainForm::linear, 0.0, 0);
  }
  if (gt(sig1, 1.0) && gt(sig2, 0.5) && le(sig2, 1.0)) {
    if (eq(sig2, 1.0)) return make(k, s1, s2, "I2: sigma1>1, sigma2=1", MainForm::linear, 0.0, 2);
    return make(k, s1, s2, "I2: sigma1>1, 1/2<sigma2<1", MainForm::linear, 2.0 - 2.0 * sig2, 0);
  }
  if (le(sig1, 1.0) && gt(sum, 1.5) && le(sum, 2.0) && !s1_is_one) {
    if (eq(sum, 2.0)) {
      return make(k, s1, s2, "I2: sigma1<=1, sigma1+sigma2=2, s1!=1", MainForm::linear, 0.0, 2);
    }
    return make(k, s1, s2, "I2: sigma1<=1, 3/2<sigma1+sigma2<2, s1!=1", MainForm::linear,
                4.0 - 2.0 * sum, 0);
  }
  if (s1_is_one && gt(sig2, 0.5) && le(sig2, 1.0)) {
    if (eq(sig2, 1.0)) return make(k, s1, s2, "I2: s1=1, sigma2=1", MainForm::linear, 0.0, 4);
    return make(k, s1, s2, "I2: s1=1, 1/2<sigma2<1", MainForm::linear, 2.0 - 2.0 * sig2, 2);
  }
  if (gt(sig1, 1.0) && eq(sig2, 0.5)) {
    return make(k, s1, s2, "I2: sigma1>1, sigma2=1/2", MainForm::t_log_t, 1.0, 0);
  }
  if (eq(sum, 1.5) && gt(sig2, 0.5)) {
    return make(k, s1, s2, "I2: sigma1+sigma2=3/2, sigma2>1/2", MainForm::t_log_t, 1.0, 0);
  }
  if (eq(sig2, 0.5) && eq(sig1, 1.0) && !s1_is_one) {
    return make(k, s1, s2, "I2: sigma2=1/2, sigma1=1, s1!=1", MainForm::t_log_t, 1.0, 0);
  }
  if (eq(sig2, 0.5) && s1_is_one) {
    return make(k, s1, s2, "I2: sigma2=1/2, s1=1", MainForm::t_log3, 1.0, 2);
  }
  throw UnsupportedCase("I2: no case covers sigma1 = " + std::to_string(sig1) +
                        ", sigma2 = " + std::to_string(sig2));
}

TheoremCase resolve_box(ComplexPoint s1, ComplexPoint s2) {
  const double sig1 = s1.sigma;
  const double sig2 = s2.sigma;
  const double sum = sig1 + sig2;
  const auto k = MeanKind::Ibox;
  if (gt(sig2, 1.0) && gt(sum, 2.0)) {
    return make(k, s1, s2, "Ibox: sigma2>1, sigma1+sigma2>2", MainForm::linear, 0.0, 0);
  }
  if (gt(sig1, 1.0) && gt(sig2, 0.5) && le(sig2, 1.0)) {
    return make(k, s1, s2, "Ibox: sigma1>1, 1/2<sigma2<=1", MainForm::linear,
                std::max(2.0 - 2.0 * sig2 + box_eps, 0.5), 0);
  }
  if (le(sig1, 1.0) && gt(sum, 1.5) && le(sum, 2.0)) {
    return make(k, s1, s2, "Ibox: sigma1<=1, 3/2<sigma1+sigma2<=2", MainForm::linear,
                std::max(4.0 - 2.0 * sum + box_eps, 0.5), 0);
  }
  if (gt(sig1, 1.0) && eq(sig2, 0.5)) {
    return make(k, s1, s2, "Ibox: sigma1>1, sigma2=1/2", MainForm::comparable, 1.0, 1);
  }
  throw UnsupportedCase("Ibox: no case covers sigma1 = " + std::to_string(sig1) +
                        ", sigma2 = " + std::to_string(sig2));
}

}  // namespace

std::string_view to_string(MeanKind k) {
  switch (k) {
    case MeanKind::I1: return "I1";
    case MeanKind::I2: return "I2";
    case MeanKind::Ibox: return "Ibox";
  }
  return "I1";
}

DzetaPoint TheoremCase::point(double t) const {
  switch (which) {
    case MeanKind::I1: return {{s1.sigma, t}, s2};
    case MeanKind::I2: return {s1, {s2.sigma, t}};
    case MeanKind::Ibox: return {{s1.sigma, t}, {s2.sigma, t}};
  }
  return {s1, s2};
}

TheoremCase resolve_case(MeanKind which, ComplexPoint s1, ComplexPoint s2) {
  switch (which) {
    case MeanKind::I1: return resolve_i1({s1.sigma, 0.0}, s2);
    case MeanKind::I2: return resolve_i2(s1, {s2.sigma, 0.0});
    case MeanKind::Ibox: return resolve_box({s1.sigma, 0.0}, {s2.sigma, 0.0});
  }
  throw UnsupportedCase("unknown mean kind");
}

MainConstant main_constant(const TheoremCase& c) {
  auto from_series = [](const SeriesResult& r) { return MainConstant{r.value, r.tail_bound}; };
  auto series_or_cap = [&](auto tol_fn, auto fixed_fn) {
    try {
      return from_series(tol_fn());
    } catch (const AccuracyError&) {
      return from_series(fixed_fn());
    }
  };
  switch (c.form) {
    case MainForm::linear:
      switch (c.which) {
        case MeanKind::I1:
          return series_or_cap(
              [&] { return series_z21(2.0 * c.s1.sigma, c.s2, series_tol); },
              [&] { return series_z21_terms(2.0 * c.s1.sigma, c.s2, series_term_cap); });
        case MeanKind::I2:
          return series_or_cap(
              [&] { return series_z22(c.s1, 2.0 * c.s2.sigma, series_tol); },
              [&] { return series_z22_terms(c.s1, 2.0 * c.s2.sigma, series_term_cap); });
        case MeanKind::Ibox: {
          return from_series(series_z2box(c.s1.sigma, c.s2.sigma));
        }
      }
      break;
    case MainForm::t_log_t: {
      if (c.which == MeanKind::I1) {
        const double d = std::abs(c.s2.z() - 1.0);
        return {1.0 / (d * d), 0.0};
      }
      double value = 0.0;
      double err = 0.0;
      if (eq(c.s1.sigma + c.s2.sigma, 1.5) || eq(c.s1.sigma, 1.0)) {
        const double d = std::abs(c.s1.z() - 1.0);
        value += 1.0 / (d * d);
      }
      if (eq(c.s2.sigma, 0.5)) {
        const ApproxValue z = zeta(c.s1.z());
        const double a = std::abs(z.value);
        value += a * a;
        err += 2.0 * a * z.err + z.err * z.err;
      }
      return {value, err};
    }
    case MainForm::t_log3: return {1.0 / 3.0, 0.0};
    case MainForm::comparable: return {1.0, 0.0};
  }
  return {};
}

Prediction predicted_main(const TheoremCase& c, double T, const MainConstant& k) {
  Prediction p;
  p.error_exponent = c.error_exponent;
  p.log_power = c.log_power;
  const double L = std::log(T);
  switch (c.form) {
    case MainForm::linear: p.main = k.value * T; break;
    case MainForm::t_log_t: p.main = k.value * T * L; break;
    case MainForm::t_log3: p.main = k.value * T * L * L * L; break;
    case MainForm::comparable:
      p.main = k.value * T * L;
      p.two_sided = true;
      break;
  }
  return p;
}

Prediction predicted_main(const TheoremCase& c, double T) {
  return predicted_main(c, T, main_constant(c));
}

void check_path(const TheoremCase& c, double T) {
  auto crosses = [&](double fixed_t) {
    // s1 + s2 has imaginary part t + fixed_t along the line.
    const double sum = c.s1.sigma + c.s2.sigma;
    const double lo = 2.0 + fixed_t - singularity_eps;
    const double hi = T + fixed_t + singularity_eps;
    if (!(lo <= 0.0 && 0.0 <= hi)) return false;
    const double even = std::min(0.0, 2.0 * std::round(sum / 2.0));
    const double d = std::min({std::abs(sum - 2.0), std::abs(sum - 1.0), std::abs(sum - even)});
    return d < singularity_eps;
  };
  switch (c.which) {
    case MeanKind::I1:
      if (std::abs(c.s2.z() - 1.0) < singularity_eps) {
        throw SingularError("I1 line lies on the singular set s2 = 1");
      }
      if (crosses(c.s2.t)) throw SingularError("I1 line crosses the singular set of s1 + s2");
      break;
    case MeanKind::I2:
      if (crosses(c.s1.t)) throw SingularError("I2 line crosses the singular set of s1 + s2");
      break;
    case MeanKind::Ibox: break;  // s1 + s2 has imaginary part 2t >= 4
  }
}

}  // namespace dzeta
