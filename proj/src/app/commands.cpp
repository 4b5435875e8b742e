#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "szmk/app/commands.hpp"
#include "szmk/funcs.hpp"
#include "szmk/polymoments.hpp"
#include "szmk/theorems.hpp"

namespace szmk::app {

namespace {

// Evaluates row(i) for i in [0, n) on worker threads; results keep index order.
template <class Row>
auto parallel_rows(std::size_t n, Row row) {
  using Result = decltype(row(std::size_t{0}));
  std::vector<Result> results(n);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) results[i] = row(i);
    }));
  }
  for (auto& job : jobs) job.get();
  return results;
}

std::vector<double> x_samples(const GridSpec& grid) {
  const Eigen::ArrayXd nodes = grid.nodes();
  return {nodes.data(), nodes.data() + nodes.size()};
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? std::string(1, sep) : "") + parts[i];
  return out;
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "eval") return Command::kEval;
  if (name == "moments") return Command::kMoments;
  if (name == "verify") return Command::kVerify;
  if (name == "bounds") return Command::kBounds;
  if (name == "voronovskaya") return Command::kVoronovskaya;
  if (name == "gruss") return Command::kGruss;
  if (name == "figure") return Command::kFigure;
  throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

std::vector<std::string> command_names() {
  return {"eval", "moments", "verify", "bounds", "voronovskaya", "gruss", "figure"};
}

void RunConfig::validate() const {
  if (m_list.empty()) throw std::invalid_argument("m list must not be empty");
  for (int m : m_list) {
    if (m < 1) throw std::invalid_argument("every m must be >= 1");
  }
  if (!(a > 1.0)) throw std::invalid_argument("a must be > 1");
  if (example != 1 && example != 2) throw std::invalid_argument("example must be 1 or 2");
  // Constructing a config validates the numerical controls.
  operator_config(m_list.front());
}

OperatorConfig RunConfig::operator_config(int m) const {
  return OperatorConfig(m, a, tail_tol, quad_order);
}

std::vector<int> parse_m_list(std::string_view text) {
  std::vector<int> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    std::string_view token = text.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      int value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::invalid_argument("bad m value '" + std::string(token) + "'");
      }
      values.push_back(value);
    } else if (end < text.size()) {
      throw std::invalid_argument("empty entry in m list");
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return values;
}

Table run_eval(const RunConfig& cfg) {
  cfg.validate();
  const TestFunction f = registry_get(cfg.function);
  Table table{{"m", "x", "f", "value", "error", "terms_used", "tail_bound"}, {}};
  const auto xs = x_samples(cfg.x_grid);
  for (int m : cfg.m_list) {
    const OperatorConfig op = cfg.operator_config(m);
    auto rows = parallel_rows(xs.size(), [&](std::size_t i) {
      const double x = xs[i];
      const EvalResult r = apply_operator(f, op, x);
      const double fx = f(x);
      return std::vector<Cell>{static_cast<long long>(m), x,           fx,
                               r.value,                   r.value - fx, static_cast<long long>(r.terms_used),
                               r.tail_bound};
    });
    for (auto& row : rows) table.add_row(std::move(row));
  }
  return table;
}

Table run_moments(const RunConfig& cfg) {
  cfg.validate();
  Table table{{"m", "x", "kind", "order", "closed_form", "exact", "numeric", "max_discrepancy"}, {}};
  const auto xs = x_samples(cfg.x_grid);
  for (int m : cfg.m_list) {
    const OperatorConfig op = cfg.operator_config(m);
    for (double x : xs) {
      for (int order = 0; order <= 4; ++order) {
        const MomentReport r = moment_report(order, false, op, x);
        table.add_row({static_cast<long long>(m), x, std::string("raw"), static_cast<long long>(order),
                       optional_cell(r.closed_form), r.exact, r.numeric, r.max_discrepancy});
      }
      for (int order = 0; order <= 6; ++order) {
        const MomentReport r = moment_report(order, true, op, x);
        table.add_row({static_cast<long long>(m), x, std::string("central"),
                       static_cast<long long>(order), optional_cell(r.closed_form), r.exact, r.numeric,
                       r.max_discrepancy});
      }
    }
  }
  return table;
}

Table run_bounds(const RunConfig& cfg) {
  cfg.validate();
  const TestFunction f = registry_get(cfg.function);
  Table table{{"theorem", "x", "m", "a", "bound", "observed", "holds", "surrogate_flags"}, {}};
  auto emit = [&](const BoundReport& r) {
    table.add_row({std::string(to_string(r.theorem)), r.x, static_cast<long long>(r.m), r.a, r.bound,
                   r.observed, r.holds, join(r.surrogate_flags, ';')});
  };
  const double uv_constant = lip_uv_constant(f, cfg.u, cfg.v, cfg.alpha, cfg.modulus_grid);
  std::optional<BVFunction> bv;
  if (f.bv && f.d1) bv = BVFunction::from(f);
  const auto xs = x_samples(cfg.x_grid);
  for (int m : cfg.m_list) {
    const OperatorConfig op = cfg.operator_config(m);
    auto rows = parallel_rows(xs.size(), [&](std::size_t i) {
      const double x = xs[i];
      std::vector<BoundReport> reports;
      reports.push_back(bound_lipschitz_maximal(f, cfg.alpha, op, x, cfg.modulus_grid));
      if (x > 0.0) {
        reports.push_back(bound_ditzian_totik(f, op, x, cfg.modulus_grid, cfg.majorant_M));
        reports.push_back(bound_lip_uv(f, uv_constant, cfg.u, cfg.v, cfg.alpha, op, x));
        if (bv) reports.push_back(bound_bv(*bv, op, x, cfg.C, cfg.modulus_grid));
      }
      return reports;
    });
    for (const auto& batch : rows) {
      for (const auto& r : batch) emit(r);
    }
  }
  return table;
}

Table run_voronovskaya(const RunConfig& cfg) {
  cfg.validate();
  const TestFunction f = registry_get(cfg.function);
  Table table{{"m", "x", "residual", "weighted_modulus_d2"}, {}};
  const auto xs = x_samples(cfg.x_grid);
  for (int m : cfg.m_list) {
    const OperatorConfig op = cfg.operator_config(m);
    auto rows = parallel_rows(xs.size(), [&](std::size_t i) {
      const VoronovskayaReport r = voronovskaya_report(f, op, xs[i], cfg.modulus_grid);
      return std::vector<Cell>{static_cast<long long>(m), xs[i], r.residual, r.weighted_modulus_d2};
    });
    for (auto& row : rows) table.add_row(std::move(row));
  }
  return table;
}

Table run_gruss(const RunConfig& cfg) {
  cfg.validate();
  const TestFunction mu = registry_get(cfg.function);
  const TestFunction nu = registry_get(cfg.function2);
  Table table{{"m", "x", "gruss", "limit", "difference"}, {}};
  const auto xs = x_samples(cfg.x_grid);
  for (int m : cfg.m_list) {
    const OperatorConfig op = cfg.operator_config(m);
    auto rows = parallel_rows(xs.size(), [&](std::size_t i) {
      const double g = gruss_quantity(mu, nu, op, xs[i]);
      const double limit = gruss_limit(mu, nu, xs[i]);
      return std::vector<Cell>{static_cast<long long>(m), xs[i], g, limit, g - limit};
    });
    for (auto& row : rows) table.add_row(std::move(row));
  }
  return table;
}

Table figure_table(int example_id, const RunConfig& cfg) {
  if (example_id != 1 && example_id != 2) throw std::invalid_argument("example must be 1 or 2");
  cfg.validate();
  const TestFunction f = registry_get(example_id == 1 ? "x2expx" : "xcos2x1");
  Table table;
  table.columns = {"x", "f"};
  for (int m : cfg.m_list) table.columns.push_back("R" + std::to_string(m));
  for (int m : cfg.m_list) table.columns.push_back("err" + std::to_string(m));

  std::vector<OperatorConfig> configs;
  for (int m : cfg.m_list) configs.push_back(cfg.operator_config(m));
  const auto xs = x_samples(cfg.x_grid);
  struct RowOut {
    std::vector<Cell> cells;
    std::string problem;
  };
  auto rows = parallel_rows(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    const double fx = f(x);
    RowOut out;
    out.cells = {x, fx};
    std::vector<double> values;
    for (const auto& op : configs) {
      double value = std::nan("");
      try {
        value = apply_operator(f, op, x).value;
      } catch (const std::domain_error& e) {
        out.problem += std::string(out.problem.empty() ? "" : "; ") + "m=" + std::to_string(op.m) +
                       ": " + e.what();
      }
      values.push_back(value);
      out.cells.emplace_back(value);
    }
    for (double value : values) out.cells.emplace_back(value - fx);
    return out;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].problem.empty()) {
      std::cerr << "figure row " << i << " (x=" << format_double(xs[i])
                << "): non-finite value, " << rows[i].problem << '\n';
    }
    table.add_row(std::move(rows[i].cells));
  }
  return table;
}

namespace {

int write_output(const Table& table, const std::string& path, OutputFormat format) {
  if (path.empty()) {
    write_table(std::cout, table, format);
    return std::cout ? kExitSuccess : kExitUsage;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "cannot open output file '" << path << "'\n";
    return kExitUsage;
  }
  write_table(file, table, format);
  file.close();
  if (!file) {
    std::cerr << "failed writing '" << path << "'\n";
    return kExitUsage;
  }
  return kExitSuccess;
}

}  // namespace

int run_figure(int example_id, const std::string& out, const RunConfig& cfg) {
  return write_output(figure_table(example_id, cfg), out, cfg.format);
}

int run_verify(const std::string& out, const VerifyOptions& options, OutputFormat format) {
  const VerifyOutcome outcome = verify_all(options);
  const int written = write_output(outcome.table, out, format);
  if (written != kExitSuccess) return written;
  if (outcome.failures > 0) {
    std::cerr << outcome.failures << " verification check(s) failed:\n";
    for (const auto& row : outcome.table.rows) {
      if (std::get<bool>(row.back())) continue;
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::cerr << (i ? "," : "  ") << outcome.table.columns[i] << "=";
        std::visit(
            [](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) {
                std::cerr << format_double(v);
              } else if constexpr (!std::is_same_v<T, std::monostate>) {
                std::cerr << v;
              }
            },
            row[i]);
      }
      std::cerr << '\n';
    }
    return kExitVerificationFailure;
  }
  return kExitSuccess;
}

int run_command(const RunConfig& cfg) {
  cfg.validate();
  switch (cfg.command) {
    case Command::kEval:
      return write_output(run_eval(cfg), cfg.output_path, cfg.format);
    case Command::kMoments:
      return write_output(run_moments(cfg), cfg.output_path, cfg.format);
    case Command::kVerify:
      return run_verify(cfg.output_path, VerifyOptions{cfg.inject_fault}, cfg.format);
    case Command::kBounds:
      return write_output(run_bounds(cfg), cfg.output_path, cfg.format);
    case Command::kVoronovskaya:
      return write_output(run_voronovskaya(cfg), cfg.output_path, cfg.format);
    case Command::kGruss:
      return write_output(run_gruss(cfg), cfg.output_path, cfg.format);
    case Command::kFigure:
      return run_figure(cfg.example, cfg.output_path, cfg);
  }
  return kExitUsage;
}

}  // namespace szmk::app
