#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "szmk/app/commands.hpp"

namespace szmk::app {

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Modified Szasz-Mirakjan-Kantorovich operator toolkit"};
  app.set_config("--config", "", "key=value configuration file; command-line flags override it");

  RunConfig cfg;
  std::string command;
  std::string m_text = "10,25,100";
  std::string format = "csv";
  double x_lo = cfg.x_grid.lo;
  double x_hi = cfg.x_grid.hi;
  int points = cfg.x_grid.points;

  app.add_option("command", command, "eval | moments | verify | bounds | voronovskaya | gruss | figure")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--function", cfg.function, "test function name")->capture_default_str();
  app.add_option("--function2", cfg.function2, "second function (gruss)")->capture_default_str();
  app.add_option("--m", m_text, "comma-separated operator indices")->capture_default_str();
  app.add_option("--a", cfg.a, "base a > 1")->capture_default_str();
  app.add_option("--x-lo", x_lo, "first x sample")->capture_default_str();
  app.add_option("--x-hi", x_hi, "last x sample")->capture_default_str();
  app.add_option("--points", points, "number of x samples")->capture_default_str();
  app.add_option("--out", cfg.output_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  app.add_option("--tail-tol", cfg.tail_tol, "Poisson tail mass cutoff")->capture_default_str();
  app.add_option("--quad-order", cfg.quad_order, "Gauss nodes per segment")->capture_default_str();
  app.add_option("--C", cfg.C, "constant of the bounded-variation estimate")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "Lipschitz exponent in (0, 1]")->capture_default_str();
  app.add_option("--u", cfg.u, "two-parameter Lipschitz weight u")->capture_default_str();
  app.add_option("--v", cfg.v, "two-parameter Lipschitz weight v")->capture_default_str();
  app.add_option("--majorant", cfg.majorant_M, "K-functional majorant constant")->capture_default_str();
  app.add_option("--example", cfg.example, "figure example (1 or 2)")->capture_default_str();
  app.add_flag("--inject-fault", cfg.inject_fault, "verify: perturb one closed form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    cfg.command = parse_command(command);
    cfg.m_list = parse_m_list(m_text);
    cfg.format = format == "jsonl" ? OutputFormat::kJsonLines : OutputFormat::kCsv;
    cfg.x_grid = GridSpec(x_lo, x_hi, points, 0);
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return run_command(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerificationFailure;
  }
}

}  // namespace szmk::app
