#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"

#include "dzeta/harness.hpp"

namespace dzeta {

namespace {

constexpr double grid_floor = 4.0;
constexpr int grid_points = 9;
constexpr double proxy_slack = 2.0;
constexpr double calibration_T = 50.0;

std::string_view form_name(MainForm f) {
  switch (f) {
    case MainForm::linear: return "linear";
    case MainForm::t_log_t: return "t_log_t";
    case MainForm::t_log3: return "t_log3";
    case MainForm::comparable: return "comparable";
  }
  return "linear";
}

// |x| nonincreasing along the last three rows.
template <class F>
bool shrinking_tail(const std::vector<MeanSquareRow>& rows, F dev) {
  if (rows.size() < 3) return true;
  const std::size_t n = rows.size();
  return dev(rows[n - 1]) <= dev(rows[n - 2]) && dev(rows[n - 2]) <= dev(rows[n - 3]);
}

void apply_bands(MeanSquareReport& r) {
  const double inf = std::numeric_limits<double>::infinity();
  auto& rows = r.rows;
  r.band_low = 0.0;
  r.band_high = inf;
  r.band_ok = true;
  if (rows.empty()) return;
  auto outside = [&](const MeanSquareRow& row) {
    return !(row.ratio >= r.band_low && row.ratio <= r.band_high);
  };
  switch (r.theorem_case.form) {
    case MainForm::linear: return;
    case MainForm::t_log_t: {
      r.band_low = 0.75;
      r.band_high = 1.25;
      const bool in_band = !outside(rows.back());
      const bool drift = shrinking_tail(rows, [](const MeanSquareRow& x) {
        return std::abs(x.ratio - 1.0);
      });
      r.band_ok = in_band && drift;
      if (!in_band) {
        r.message = "ratio at the last row is outside [0.75, 1.25]";
      } else if (!drift) {
        r.message = "|ratio - 1| is not shrinking over the last three rows";
      }
      break;
    }
    case MainForm::t_log3: {
      r.band_low = 0.5;
      r.band_high = 2.0;
      const std::size_t first = rows.size() >= 3 ? rows.size() - 3 : 0;
      bool in_band = true;
      for (std::size_t i = first; i < rows.size(); ++i) in_band = in_band && !outside(rows[i]);
      const bool drift = shrinking_tail(rows, [](const MeanSquareRow& x) {
        return std::abs(std::log(x.ratio));
      });
      r.band_ok = in_band && drift;
      if (!in_band) {
        r.message = "ratio on the upper rows is outside [0.5, 2]";
      } else if (!drift) {
        r.message = "|log ratio| is not shrinking over the last three rows";
      }
      break;
    }
    case MainForm::comparable: {
      // Calibrate at the row nearest T = 50 and assert on the rows above it.
      std::size_t base = 0;
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::abs(std::log(rows[i].T / calibration_T)) <
            std::abs(std::log(rows[base].T / calibration_T))) {
          base = i;
        }
      }
      const double rho = rows[base].ratio;
      const double c = proxy_slack * std::max(rho, 1.0 / rho);
      r.band_low = 1.0 / c;
      r.band_high = c;
      for (std::size_t i = base; i < rows.size(); ++i) {
        if (outside(rows[i])) {
          r.band_ok = false;
          r.message = "ratio leaves the band calibrated near T = 50";
          if (r.failing_row < 0) r.failing_row = static_cast<int>(i);
          break;
        }
      }
      break;
    }
  }
  if (!r.band_ok && r.failing_row < 0) r.failing_row = static_cast<int>(rows.size() - 1);
}

}  // namespace

std::vector<double> default_grid(double Tmax) {
  std::vector<double> g;
  for (int k = grid_points - 1; k >= 0; --k) {
    const double T = Tmax * std::pow(2.0, -0.5 * k);
    if (T >= grid_floor) g.push_back(T);
  }
  return g;
}

MeanSquareReport fit_and_verify(const TheoremCase& c, const std::vector<double>& Tgrid,
                                const QuadPolicy& quad) {
  MeanSquareReport r;
  r.theorem_case = c;
  r.h0 = quad.h0;
  r.quad_tol = quad.tol;
  r.predicted_exponent = c.error_exponent;
  r.predicted_log_power = c.log_power;
  r.constant = main_constant(c);
  const std::vector<QuadResult> q = integrate_mean_square_grid(c, Tgrid, quad);

  for (const QuadResult& x : q) {
    MeanSquareRow row;
    row.T = x.T;
    row.integral = x.integral;
    row.main = predicted_main(c, x.T, r.constant).main;
    row.residual = row.integral - row.main;
    const double L = std::log(x.T);
    const double scale = std::pow(x.T, c.error_exponent) * std::pow(L, c.log_power);
    row.scaled_residual = std::abs(row.residual) / scale;
    row.quad_err = x.err;
    row.ratio = row.main != 0.0 ? row.integral / row.main : 0.0;
    r.rows.push_back(row);
  }

  r.bounded = true;
  if (!r.rows.empty()) {
    const std::size_t mid = (r.rows.size() - 1) / 2;
    double running = 0.0;
    double at_mid = 0.0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      running = std::max(running, r.rows[i].scaled_residual);
      if (i == mid) at_mid = running;
      if (i > mid && running > proxy_slack * at_mid) {
        r.bounded = false;
        r.failing_row = static_cast<int>(i);
        r.message = "scaled residual grows past 2x its midpoint running max";
        break;
      }
    }
  }
  if (r.bounded) apply_bands(r);
  r.pass = r.bounded && r.band_ok;
  if (r.pass) r.message = "ok";
  return r;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const MeanSquareReport& r) {
  os << "T,integral,main,residual,scaled_residual,quad_err\n";
  for (const auto& row : r.rows) {
    os << format_double(row.T) << ',' << format_double(row.integral) << ','
       << format_double(row.main) << ',' << format_double(row.residual) << ','
       << format_double(row.scaled_residual) << ',' << format_double(row.quad_err) << '\n';
  }
}

void write_json(std::ostream& os, const MeanSquareReport& r) {
  using nlohmann::json;
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); };
  const TheoremCase& c = r.theorem_case;
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"T", num(row.T)},
                    {"integral", num(row.integral)},
                    {"main", num(row.main)},
                    {"residual", num(row.residual)},
                    {"scaled_residual", num(row.scaled_residual)},
                    {"quad_err", num(row.quad_err)},
                    {"ratio", num(row.ratio)}});
  }
  json j = {
      {"which", std::string(to_string(c.which))},
      {"case", c.label},
      {"s1", {{"sigma", c.s1.sigma}, {"t", c.s1.t}}},
      {"s2", {{"sigma", c.s2.sigma}, {"t", c.s2.t}}},
      {"main_form", std::string(form_name(c.form))},
      {"main_constant", num(r.constant.value)},
      {"main_constant_err", num(r.constant.err)},
      {"predicted_exponent", r.predicted_exponent},
      {"predicted_log_power", r.predicted_log_power},
      {"h0", r.h0},
      {"quad_tol", r.quad_tol},
      {"bounded", r.bounded},
      {"band", {num(r.band_low), num(r.band_high)}},
      {"band_ok", r.band_ok},
      {"pass", r.pass},
      {"failing_row", r.failing_row},
      {"message", r.message},
      {"rows", rows},
  };
  os << j.dump(2) << '\n';
}

}  // namespace dzeta
