#include "dzeta/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dzeta/dzeta.hpp"
#include "dzeta/series.hpp"

namespace dzeta::cli {

namespace {

using nlohmann::json;

enum class Format { plain, json, csv };

Format parse_format(const std::string& s) {
  if (s == "plain") return Format::plain;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw DomainError("unknown format '" + s + "' (expected plain, json or csv)");
}

double parse_number(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
  return x;
}

// Reads flat key=value lines into --key=value arguments.
std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") {
      throw DomainError(path + ":" + std::to_string(lineno) + ": bad key '" + key + "'");
    }
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

// Pulls --config out of args and splices the file's settings in right after
// the subcommand, so explicit flags (which come later) win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  const std::vector<std::string> extra = read_config(path);
  const auto at = args.empty() ? args.end() : args.begin() + 1;
  args.insert(at, extra.begin(), extra.end());
  return args;
}

int env_threads() {
  const char* v = std::getenv("DZETA_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  const double x = parse_number(v);
  if (x < 0 || x != static_cast<int>(x)) throw DomainError("DZETA_THREADS must be a count >= 0");
  return static_cast<int>(x);
}

struct PolicyFlags {
  double C = TruncationPolicy{}.C;
  std::int64_t N_min = TruncationPolicy{}.N_min;
  int M = TruncationPolicy{}.M;

  void add(CLI::App& app) {
    app.add_option("--C", C, "Hardy-Littlewood window constant (> 1)")->check(CLI::Range(1.0, 1e6));
    app.add_option("--N-min", N_min, "smallest truncation length")->check(CLI::Range(1, 1 << 22));
    app.add_option("--M", M, "Euler-Maclaurin order (odd, 3..15)")->check(CLI::Range(3, 15));
  }
  TruncationPolicy policy() const {
    TruncationPolicy p;
    p.C = C;
    p.N_min = N_min;
    p.M = M;
    return p;
  }
};

struct EvalArgs {
  std::string s1, s2;
  std::string split = "auto";
  std::int64_t N = 0;
  double tol = 1e-10;
  int random = 0;
  std::uint64_t seed = 1;
  std::string format = "plain";
  PolicyFlags policy;
};

struct SeriesArgs {
  std::string which;
  std::string s1, s2;
  double sigma1 = 0.0, sigma2 = 0.0, two_sigma1 = 0.0, two_sigma2 = 0.0;
  std::int64_t K = 0;
  double tol = 1e-10;
  std::string format = "plain";
  CLI::Option* o_s1 = nullptr;
  CLI::Option* o_s2 = nullptr;
  CLI::Option* o_sigma1 = nullptr;
  CLI::Option* o_sigma2 = nullptr;
  CLI::Option* o_two1 = nullptr;
  CLI::Option* o_two2 = nullptr;
  CLI::Option* o_K = nullptr;
};

struct VerifyArgs {
  std::string name;
  std::string which;
  std::string s1, s2;
  double sigma1 = 0.0, sigma2 = 0.0;
  double Tmax = 400.0;
  std::string out = "reports";
  double h0 = QuadPolicy{}.h0;
  double quad_tol = QuadPolicy{}.tol;
  int threads = -1;
  std::string format = "plain";
  CLI::Option* o_s1 = nullptr;
  CLI::Option* o_s2 = nullptr;
  CLI::Option* o_sigma1 = nullptr;
  CLI::Option* o_sigma2 = nullptr;
  CLI::Option* o_which = nullptr;
};

json value_json(const DzetaValue& v) {
  return {{"re", v.value.real()},
          {"im", v.value.imag()},
          {"err", v.err},
          {"split", std::string(to_string(v.split))},
          {"terms", v.terms}};
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Format fmt = parse_format(a.format);
  const SplitChoice split = parse_split(a.split);
  const TruncationPolicy policy = a.policy.policy();
  auto evaluate = [&](const DzetaPoint& p) {
    return split == SplitChoice::brute ? dzeta_brute(p, a.tol) : dzeta(p, split, policy, a.N);
  };

  if (a.random > 0) {
    // Points of the convergent region, where every split applies.
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> sig2(1.1, 3.0), sum(2.1, 5.0), t(-20.0, 20.0);
    json arr = json::array();
    if (fmt == Format::csv) out << "s1,s2,re,im,err,split,terms\n";
    for (int i = 0; i < a.random; ++i) {
      const double b = sig2(rng);
      const double s = sum(rng);
      const double t1 = t(rng);
      const double t2 = t(rng);
      const DzetaPoint p{{s - b, t1}, {b, t2}};
      const DzetaValue v = evaluate(p);
      const std::string z1 = format_complex(p.s1), z2 = format_complex(p.s2);
      if (fmt == Format::json) {
        json j = value_json(v);
        j["s1"] = z1;
        j["s2"] = z2;
        arr.push_back(j);
      } else {
        const char sep = fmt == Format::csv ? ',' : ' ';
        out << z1 << sep << z2 << sep << format_double(v.value.real()) << sep
            << format_double(v.value.imag()) << sep << format_double(v.err) << sep
            << to_string(v.split) << sep << v.terms << '\n';
      }
    }
    if (fmt == Format::json) out << arr.dump(2) << '\n';
    return exit_ok;
  }

  if (a.s1.empty() || a.s2.empty()) throw DomainError("eval needs --s1 and --s2 (or --random)");
  const DzetaPoint p{parse_complex(a.s1), parse_complex(a.s2)};
  const DzetaValue v = evaluate(p);
  switch (fmt) {
    case Format::json: out << value_json(v).dump(2) << '\n'; break;
    case Format::csv:
      out << "re,im,err,split,terms\n"
          << format_double(v.value.real()) << ',' << format_double(v.value.imag()) << ','
          << format_double(v.err) << ',' << to_string(v.split) << ',' << v.terms << '\n';
      break;
    case Format::plain:
      out << "value " << format_complex(v.value) << '\n'
          << "err " << format_double(v.err) << '\n'
          << "split " << to_string(v.split) << '\n'
          << "terms " << v.terms << '\n';
      break;
  }
  return exit_ok;
}

int cmd_series(const SeriesArgs& a, std::ostream& out) {
  const Format fmt = parse_format(a.format);
  const SeriesKind which = parse_series(a.which);
  auto sigma_of = [](CLI::Option* half, double h, CLI::Option* twice, double t2,
                     const char* name) {
    if (half->count() && twice->count()) {
      throw DomainError(std::string("give only one of --") + name + " and --two-" + name);
    }
    if (half->count()) return h;
    if (twice->count()) return 0.5 * t2;
    throw DomainError(std::string("missing --") + name + " (or --two-" + name + ")");
  };
  auto point_of = [&](CLI::Option* whole, const std::string& text, CLI::Option* half, double h,
                      CLI::Option* twice, double t2, const char* name) {
    if (whole->count()) {
      if (half->count() || twice->count()) {
        throw DomainError(std::string("give either --s") + name[5] + " or --" + name);
      }
      return parse_complex(text);
    }
    return ComplexPoint{sigma_of(half, h, twice, t2, name), 0.0};
  };

  SeriesResult r;
  switch (which) {
    case SeriesKind::z21: {
      const double s1 = sigma_of(a.o_sigma1, a.sigma1, a.o_two1, a.two_sigma1, "sigma1");
      const ComplexPoint s2 =
          point_of(a.o_s2, a.s2, a.o_sigma2, a.sigma2, a.o_two2, a.two_sigma2, "sigma2");
      r = a.o_K->count() ? series_z21_terms(2.0 * s1, s2, a.K) : series_z21(2.0 * s1, s2, a.tol);
      break;
    }
    case SeriesKind::z22: {
      const ComplexPoint s1 =
          point_of(a.o_s1, a.s1, a.o_sigma1, a.sigma1, a.o_two1, a.two_sigma1, "sigma1");
      const double s2 = sigma_of(a.o_sigma2, a.sigma2, a.o_two2, a.two_sigma2, "sigma2");
      r = a.o_K->count() ? series_z22_terms(s1, 2.0 * s2, a.K) : series_z22(s1, 2.0 * s2, a.tol);
      break;
    }
    case SeriesKind::z2box: {
      const double s1 = sigma_of(a.o_sigma1, a.sigma1, a.o_two1, a.two_sigma1, "sigma1");
      const double s2 = sigma_of(a.o_sigma2, a.sigma2, a.o_two2, a.two_sigma2, "sigma2");
      r = series_z2box(s1, s2, a.o_K->count() ? a.K : default_box_terms);
      break;
    }
  }
  switch (fmt) {
    case Format::json:
      out << json{{"series", std::string(to_string(which))},
                  {"value", r.value},
                  {"tail_bound", std::isfinite(r.tail_bound) ? json(r.tail_bound)
                                                             : json(format_double(r.tail_bound))},
                  {"terms", r.terms_used}}
                 .dump(2)
          << '\n';
      break;
    case Format::csv:
      out << "series,value,tail_bound,terms\n"
          << to_string(which) << ',' << format_double(r.value) << ','
          << format_double(r.tail_bound) << ',' << r.terms_used << '\n';
      break;
    case Format::plain:
      out << "series " << to_string(which) << '\n'
          << "value " << format_double(r.value) << '\n'
          << "tail_bound " << format_double(r.tail_bound) << '\n'
          << "terms " << r.terms_used << '\n';
      break;
  }
  return exit_ok;
}

MeanKind parse_kind(const std::string& s) {
  for (auto k : {MeanKind::I1, MeanKind::I2, MeanKind::Ibox}) {
    if (s == to_string(k)) return k;
  }
  throw DomainError("unknown mean '" + s + "' (expected I1, I2 or Ibox)");
}

void print_report(std::ostream& out, Format fmt, const std::string& name,
                  const MeanSquareReport& r) {
  switch (fmt) {
    case Format::json: write_json(out, r); return;
    case Format::csv:
      out << "# " << name << '\n';
      write_csv(out, r);
      return;
    case Format::plain: break;
  }
  out << "case " << name << " [" << r.theorem_case.label << "]\n"
      << "s1 " << format_complex(r.theorem_case.s1) << "  s2 "
      << format_complex(r.theorem_case.s2) << '\n'
      << "main_constant " << format_double(r.constant.value) << " +- "
      << format_double(r.constant.err) << '\n'
      << "T integral main residual scaled_residual quad_err ratio\n";
  for (const auto& row : r.rows) {
    out << format_double(row.T) << ' ' << format_double(row.integral) << ' '
        << format_double(row.main) << ' ' << format_double(row.residual) << ' '
        << format_double(row.scaled_residual) << ' ' << format_double(row.quad_err) << ' '
        << format_double(row.ratio) << '\n';
  }
  out << "result " << (r.pass ? "pass" : "FAIL") << " (" << r.message << ")\n";
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const Format fmt = parse_format(a.format);
  std::vector<CasePreset> todo;
  if (a.name == "all") {
    if (a.o_s1->count() || a.o_s2->count() || a.o_sigma1->count() || a.o_sigma2->count() ||
        a.o_which->count()) {
      throw DomainError("--case all takes no point flags");
    }
    todo = case_presets();
  } else {
    CasePreset c;
    if (a.name == "custom") {
      if (!a.o_which->count()) throw DomainError("--case custom needs --which I1|I2|Ibox");
      c = {"custom-" + a.which, parse_kind(a.which), {}, {}};
    } else {
      const auto& all = case_presets();
      const auto it = std::find_if(all.begin(), all.end(),
                                   [&](const CasePreset& p) { return p.name == a.name; });
      if (it == all.end()) throw DomainError("unknown case '" + a.name + "'");
      c = *it;
      if (a.o_which->count() && parse_kind(a.which) != c.which) {
        throw DomainError("--which conflicts with case " + a.name);
      }
    }
    if (a.o_s1->count()) c.s1 = parse_complex(a.s1);
    if (a.o_s2->count()) c.s2 = parse_complex(a.s2);
    if (a.o_sigma1->count()) c.s1.sigma = a.sigma1;
    if (a.o_sigma2->count()) c.s2.sigma = a.sigma2;
    todo.push_back(c);
  }

  QuadPolicy quad;
  quad.h0 = a.h0;
  quad.tol = a.quad_tol;
  quad.threads = a.threads >= 0 ? a.threads : env_threads();
  const std::vector<double> grid = default_grid(a.Tmax);
  if (grid.size() < 6) throw DomainError("--Tmax too small for a 6-point grid (needs >= 23)");

  // Resolve everything up front so bad parameters fail before any integration.
  std::vector<TheoremCase> cases;
  for (const auto& p : todo) {
    cases.push_back(resolve_case(p.which, p.s1, p.s2));
    check_path(cases.back(), grid.back());
  }

  bool all_pass = true;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const MeanSquareReport r = fit_and_verify(cases[i], grid, quad);
    const std::filesystem::path dir = std::filesystem::path(a.out) / todo[i].name;
    std::filesystem::create_directories(dir);
    {
      std::ofstream csv(dir / "report.csv");
      write_csv(csv, r);
      std::ofstream js(dir / "report.json");
      write_json(js, r);
      if (!csv || !js) throw DomainError("cannot write reports under " + dir.string());
    }
    print_report(out, fmt, todo[i].name, r);
    if (!r.pass) {
      all_pass = false;
      const int row = r.failing_row;
      err << "FAIL " << todo[i].name << ": " << r.message;
      if (row >= 0) err << " at row " << row << " (T=" << format_double(r.rows[row].T) << ")";
      err << '\n';
    }
  }
  return all_pass ? exit_ok : exit_proxy;
}

}  // namespace

ComplexPoint parse_complex(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> ComplexPoint {
    throw DomainError("bad complex number '" + original + "' (expected a+bi, a-bi, a or bi)");
  };
  if (text.empty()) return fail();
  if (text.back() != 'i') return {parse_number(text), 0.0};
  text.remove_suffix(1);
  // The split is the last sign that is not leading and not an exponent sign.
  std::size_t cut = std::string_view::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  auto imag = [&](std::string_view s) {
    if (s == "" || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    return parse_number(s);
  };
  try {
    if (cut == std::string_view::npos) return {0.0, imag(text)};
    return {parse_number(text.substr(0, cut)), imag(text.substr(cut))};
  } catch (const DomainError&) {
    return fail();
  }
}

std::string format_complex(cplx z) {
  const std::string im = format_double(z.imag());
  const bool sign = !im.empty() && (im[0] == '-' || im[0] == '+');
  return format_double(z.real()) + (sign ? "" : "+") + im + "i";
}

const std::vector<CasePreset>& case_presets() {
  static const std::vector<CasePreset> presets = {
      {"i2-convergent", MeanKind::I2, {2.0, 0.0}, {2.0, 0.0}},
      {"i1-critical", MeanKind::I1, {1.0, 0.0}, {0.5, 3.0}},
      {"i2-double-critical", MeanKind::I2, {1.0, 0.0}, {0.5, 0.0}},
      {"ibox-comparable", MeanKind::Ibox, {2.0, 0.0}, {0.5, 0.0}},
      {"i1-subcritical", MeanKind::I1, {0.9, 0.0}, {0.9, 0.0}},
  };
  return presets;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euler double zeta values, mean-value series and mean-square checks", "dzeta"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  const std::string config_help = "key=value file (# comments); flags override it";

  EvalArgs ev;
  CLI::App* eval = app.add_subcommand("eval", "evaluate zeta_2(s1, s2)");
  eval->add_option("--s1", ev.s1, "first argument, a+bi");
  eval->add_option("--s2", ev.s2, "second argument, a+bi");
  eval->add_option("--split", ev.split, "auto, brute, v, u, t1, t2 or diag");
  eval->add_option("--N", ev.N, "truncation for t1, t2, diag (0: automatic)")->check(CLI::NonNegativeNumber);
  eval->add_option("--tol", ev.tol, "brute tolerance")->check(CLI::PositiveNumber);
  eval->add_option("--random", ev.random, "evaluate this many random convergent points")->check(CLI::NonNegativeNumber);
  eval->add_option("--seed", ev.seed, "seed for --random");
  eval->add_option("--format", ev.format, "plain, json or csv");
  eval->add_option("--config", config_help);
  ev.policy.add(*eval);

  SeriesArgs se;
  CLI::App* series = app.add_subcommand("series", "mean-value series constants");
  series->add_option("--which", se.which, "z21, z22 or z2box")->required();
  se.o_s1 = series->add_option("--s1", se.s1, "s1 for z22, a+bi");
  se.o_s2 = series->add_option("--s2", se.s2, "s2 for z21, a+bi");
  se.o_sigma1 = series->add_option("--sigma1", se.sigma1);
  se.o_sigma2 = series->add_option("--sigma2", se.sigma2);
  se.o_two1 = series->add_option("--two-sigma1", se.two_sigma1);
  se.o_two2 = series->add_option("--two-sigma2", se.two_sigma2);
  se.o_K = series->add_option("--K", se.K, "fixed number of terms")->check(CLI::PositiveNumber);
  series->add_option("--tol", se.tol, "tail bound target when --K is absent")->check(CLI::PositiveNumber);
  series->add_option("--format", se.format, "plain, json or csv");
  series->add_option("--config", config_help);

  VerifyArgs ve;
  CLI::App* verify = app.add_subcommand("verify", "mean-square runs against the main terms");
  verify->add_option("--case", ve.name, "preset name, custom or all")->required();
  ve.o_which = verify->add_option("--which", ve.which, "I1, I2 or Ibox (custom cases)");
  ve.o_s1 = verify->add_option("--s1", ve.s1, "a+bi");
  ve.o_s2 = verify->add_option("--s2", ve.s2, "a+bi");
  ve.o_sigma1 = verify->add_option("--sigma1", ve.sigma1);
  ve.o_sigma2 = verify->add_option("--sigma2", ve.sigma2);
  verify->add_option("--Tmax", ve.Tmax, "largest T of the grid")->check(CLI::Range(4.0, 1e5));
  verify->add_option("--out", ve.out, "report directory");
  verify->add_option("--h0", ve.h0, "base quadrature step")->check(CLI::PositiveNumber);
  verify->add_option("--quad-tol", ve.quad_tol, "relative panel tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--threads", ve.threads, "worker threads (default DZETA_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--format", ve.format, "plain, json or csv");
  verify->add_option("--config", config_help);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (*eval) return cmd_eval(ev, out);
    if (*series) return cmd_series(se, out);
    return cmd_verify(ve, out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_domain;
  } catch (const SingularError& e) {
    err << "singular: " << e.what() << '\n';
    return exit_singular;
  } catch (const AccuracyError& e) {
    err << "accuracy: " << e.what() << " (achieved " << format_double(e.achieved()) << ")\n";
    return exit_domain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dzeta::cli
