#ifndef SZMK_APP_COMMANDS_HPP_
#define SZMK_APP_COMMANDS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "szmk/app/table.hpp"
#include "szmk/kernel.hpp"
#include "szmk/moduli.hpp"

namespace szmk::app {

enum class Command { kEval, kMoments, kVerify, kBounds, kVoronovskaya, kGruss, kFigure };

Command parse_command(std::string_view name);
std::vector<std::string> command_names();

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Everything one CLI invocation needs. Defaults reproduce the figure setup:
/// m = 10, 25, 100, a = 2 and 201 points on [0, 5].
struct RunConfig {
  Command command = Command::kEval;
  std::string function = "x2expx";
  std::string function2 = "e2";
  std::vector<int> m_list{10, 25, 100};
  double a = 2.0;
  GridSpec x_grid{0.0, 5.0, 201, 0};
  GridSpec modulus_grid{};
  std::string output_path;  ///< empty: standard output
  OutputFormat format = OutputFormat::kCsv;
  double tail_tol = kDefaultTailTol;
  int quad_order = kDefaultQuadOrder;
  double C = 2.0;
  double alpha = 1.0;
  double u = 1.0;
  double v = 1.0;
  double majorant_M = 1.0;
  int example = 1;
  bool inject_fault = false;

  /// Throws std::invalid_argument on an empty or non-positive m list or a <= 1.
  void validate() const;
  OperatorConfig operator_config(int m) const;
};

/// Parses "10,25,100". Throws std::invalid_argument on malformed input.
std::vector<int> parse_m_list(std::string_view text);

/// Columns: m, x, f, value, error, terms_used, tail_bound.
Table run_eval(const RunConfig& cfg);
/// Columns: m, x, kind, order, closed_form, exact, numeric, max_discrepancy.
Table run_moments(const RunConfig& cfg);
/// Columns: theorem, x, m, a, bound, observed, holds, surrogate_flags.
Table run_bounds(const RunConfig& cfg);
/// Columns: m, x, residual, weighted_modulus_d2.
Table run_voronovskaya(const RunConfig& cfg);
/// Columns: m, x, gruss, limit, difference.
Table run_gruss(const RunConfig& cfg);

/// Figure data for example 1 (x^2 e^x) or 2 (x cos(2x+1)). Columns:
/// x, f, R<m>..., err<m>... with err = R - f, one row per x sample.
/// Non-finite cells are written as nan and listed on stderr.
Table figure_table(int example_id, const RunConfig& cfg);

/// Writes the figure CSV to `out`. Returns an exit code.
int run_figure(int example_id, const std::string& out, const RunConfig& cfg = RunConfig{});

struct VerifyOptions {
  bool inject_fault = false;  ///< perturb one closed form (negative control)
};

struct VerifyOutcome {
  Table table;  ///< suite, check, m, a, x, value, reference, discrepancy, tolerance, pass
  long failures = 0;
};

/// Every moment identity, inequality and asymptotic-limit suite.
VerifyOutcome verify_all(const VerifyOptions& options = {});

/// Writes the verify table to `out` (stdout if empty); 0 iff every check
/// passes, 1 otherwise.
int run_verify(const std::string& out, const VerifyOptions& options = {},
               OutputFormat format = OutputFormat::kCsv);

/// Runs one command and writes its table. Returns an exit code.
int run_command(const RunConfig& cfg);

/// Full command-line front end; argv[0] is the program name.
int run_cli(int argc, const char* const* argv);

}  // namespace szmk::app

#endif  // SZMK_APP_COMMANDS_HPP_
