#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dzeta/harness.hpp"
#include "dzeta/types.hpp"

namespace dzeta::cli {

/// Exit codes of the dzeta tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 2;
inline constexpr int exit_singular = 3;
inline constexpr int exit_proxy = 4;

/// Parses "a+bi", "a-bi", "a" or "bi" without spaces; throws DomainError.
ComplexPoint parse_complex(std::string_view text);
std::string format_complex(cplx z);

/// A named verification run: mean kind plus the fixed parameters.
struct CasePreset {
  std::string name;
  MeanKind which;
  ComplexPoint s1;
  ComplexPoint s2;
};

/// i2-convergent, i1-critical, i2-double-critical, ibox-comparable, i1-subcritical.
const std::vector<CasePreset>& case_presets();

/// Runs the tool on args (without the program name). Output goes to out,
/// diagnostics to err; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dzeta::cli
