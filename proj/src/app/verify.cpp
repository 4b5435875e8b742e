#include <cmath>
#include <numbers>

#include "szmk/app/commands.hpp"
#include "szmk/polymoments.hpp"

namespace szmk::app {

namespace {

constexpr double kKernelTolerance = 1e-9;
constexpr double kExactRawTolerance = 1e-12;
constexpr double kCentralTolerance = 1e-10;
constexpr double kInjectedPerturbation = 1e-6;

const std::vector<double> kGridX{0.0, 0.5, 1.0, 2.0, 5.0};
const std::vector<int> kGridM{1, 10, 100};
const std::vector<double> kGridA{1.5, 2.0, std::numbers::e, 10.0};

class Recorder {
 public:
  Recorder() {
    outcome_.table.columns = {"suite", "check", "m", "a", "x", "value", "reference",
                              "discrepancy", "tolerance", "pass"};
  }

  // Passes when |value - reference| <= tolerance * (1 + |reference|).
  void close(const std::string& suite, const std::string& check, int m, double a, double x,
             double value, double reference, double tolerance) {
    const double discrepancy = std::abs(value - reference);
    const double allowed = tolerance * (1.0 + std::abs(reference));
    add(suite, check, m, a, x, value, reference, discrepancy, allowed, discrepancy <= allowed);
  }

  // Passes when value <= reference.
  void at_most(const std::string& suite, const std::string& check, int m, double a, double x,
               double value, double reference, bool pass) {
    add(suite, check, m, a, x, value, reference, value - reference, 0.0, pass);
  }

  VerifyOutcome take() { return std::move(outcome_); }

 private:
  void add(const std::string& suite, const std::string& check, int m, double a, double x,
           double value, double reference, double discrepancy, double tolerance, bool pass) {
    outcome_.table.add_row({suite, check, static_cast<long long>(m), a, x, value, reference,
                            discrepancy, tolerance, pass});
    if (!pass) ++outcome_.failures;
  }

  VerifyOutcome outcome_;
};

}  // namespace

VerifyOutcome verify_all(const VerifyOptions& options) {
  Recorder rec;
  const double fault = options.inject_fault ? 1.0 + kInjectedPerturbation : 1.0;

  for (double a : kGridA) {
    for (int m : kGridM) {
      const OperatorConfig cfg(m, a);
      for (double x : kGridX) {
        for (int i = 0; i <= 3; ++i) {
          const std::string name = "e" + std::to_string(i);
          double closed = raw_moment_closed(i, m, a, x);
          if (i == 1) closed *= fault;
          const double kernel =
              apply_operator([i](double t) { return std::pow(t, i); }, cfg, x).value;
          rec.close("raw_moments_kernel", name, m, a, x, kernel, closed, kKernelTolerance);
          rec.close("raw_moments_exact", name, m, a, x, raw_moment_exact(i, m, a, x), closed,
                    kExactRawTolerance);
        }
        for (int j = 1; j <= 4; ++j) {
          rec.close("central_moments", "Lambda" + std::to_string(j), m, a, x,
                    central_moment_exact(j, m, a, x), central_moment_closed(j, m, a, x),
                    kCentralTolerance);
        }
        const InequalityPair l2 = check_lemma_l2(m, a, x);
        rec.at_most("moment_inequalities", "Lambda1<=1/(2m)", m, a, x, l2.lhs1, l2.rhs1, l2.first);
        rec.at_most("moment_inequalities", "Lambda2<=1/(3m^2)+x(x+1)/m", m, a, x, l2.lhs2, l2.rhs2, l2.second);
      }
    }
  }

  for (double a : {2.0, std::numbers::e}) {
    for (double x : {0.5, 1.0, 2.0}) {
      const struct {
        int order;
        double envelope;
      } limits[] = {{2, 5.0}, {3, 50.0}, {6, 500.0}};
      for (const auto& [order, envelope] : limits) {
        const AsymptoticCheck check = asymptotic_check(order, a, x, {1000, 10000});
        const std::string name = "order" + std::to_string(order);
        for (const auto& [m, value] : check.sequence) {
          const double error = std::abs(value - check.limit_value);
          rec.at_most("moment_asymptotics", name, m, a, x, error, envelope / m, error <= envelope / m);
        }
        rec.at_most("moment_asymptotics", name + "_monotone", 0, a, x,
                    std::abs(check.sequence.back().second - check.limit_value),
                    std::abs(check.sequence.front().second - check.limit_value), check.converged);
      }
    }
  }

  for (double a : kGridA) {
    for (int m : {5, 50}) {
      const OperatorConfig cfg(m, a);
      for (double x : {0.5, 1.0, 2.0}) {
        const InequalityPair l3 = check_lemma_l3(cfg, x, 0.5 * x, 2.0 * x);
        rec.at_most("cdf_tails", "lower_tail", m, a, x, l3.lhs1, l3.rhs1, l3.first);
        rec.at_most("cdf_tails", "upper_tail", m, a, x, l3.lhs2, l3.rhs2, l3.second);
      }
    }
  }
  return rec.take();
}

}  // namespace szmk::app
