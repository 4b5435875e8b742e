#include "szmk/polymoments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace szmk {

namespace {

constexpr double kRoundingSlack = 1e-12;

using Table = std::array<std::array<double, kMaxExactOrder + 2>, kMaxExactOrder + 2>;

Table build_stirling_table() {
  Table s{};
  s[0][0] = 1.0;
  for (int n = 1; n <= kMaxExactOrder; ++n) {
    for (int k = 1; k <= n; ++k) s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
  }
  return s;
}

Table build_binomial_table() {
  Table c{};
  for (int n = 0; n <= kMaxExactOrder + 1; ++n) {
    c[n][0] = 1.0;
    for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0.0);
  }
  return c;
}

const Table& binomial_table() {
  static const Table table = build_binomial_table();
  return table;
}

double binomial(int n, int k) { return binomial_table()[n][k]; }

void check_order(int j) {
  if (j < 0 || j > kMaxExactOrder) {
    throw std::invalid_argument("exact moments support orders 0.." + std::to_string(kMaxExactOrder));
  }
}

void check_arguments(int m, double a, double x) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(a > 1.0)) throw std::invalid_argument("a must be > 1");
  if (!(x >= 0.0)) throw std::invalid_argument("x must be >= 0");
}

// u / expm1(u) - 1 for u > 0.
double mean_ratio_defect(double u) {
  const double denom = std::expm1(u);
  if (u >= 1.0) return u / denom - 1.0;
  // u - expm1(u) = -sum_{n>=2} u^n / n!
  double term = u * u / 2.0;
  double sum = 0.0;
  for (int n = 3; n < 40; ++n) {
    sum += term;
    term *= u / n;
    if (term < 0.1 * std::numeric_limits<double>::epsilon() * sum) break;
  }
  return -sum / denom;
}

double mean_of_poisson(int m, double a, double x) {
  return x * std::log(a) / base_increment(m, a);
}

}  // namespace

double stirling2(int n, int k) {
  static const Table table = build_stirling_table();
  check_order(n);
  if (k < 0 || k > n) return 0.0;
  return table[n][k];
}

double raw_moment_exact(int j, int m, double a, double x) {
  check_order(j);
  check_arguments(m, a, x);
  const double lambda = mean_of_poisson(m, a, x);
  const double q = lambda / m;
  // m * int_{k/m}^{(k+1)/m} t^j dt = sum_i C(j+1, i) k^i / ((j+1) m^j)
  double total = 0.0;
  for (int i = 0; i <= j; ++i) {
    // E[K^i] / m^j = sum_r S(i, r) q^r m^{r-j}
    double scaled = 0.0;
    double q_power = 1.0;
    for (int r = 0; r <= i; ++r) {
      scaled += stirling2(i, r) * q_power * std::pow(static_cast<double>(m), r - j);
      q_power *= q;
    }
    total += binomial(j + 1, i) * scaled;
  }
  return total / (j + 1);
}

double central_moment_exact(int j, int m, double a, double x) {
  check_order(j);
  check_arguments(m, a, x);
  const double lambda = mean_of_poisson(m, a, x);
  const double shift = x * mean_ratio_defect(std::log(a) / m) + 0.5 / m;

  // Poisson central moments from cumulants kappa_n = lambda (n >= 2).
  std::array<double, kMaxExactOrder + 1> poisson{};
  poisson[0] = 1.0;
  for (int n = 1; n <= j; ++n) {
    double s = 0.0;
    for (int k = 2; k <= n; ++k) s += binomial(n - 1, k - 1) * lambda * poisson[n - k];
    poisson[n] = s;
  }
  std::array<double, kMaxExactOrder + 1> uniform{};
  for (int n = 0; n <= j; n += 2) uniform[n] = std::pow(0.5, n) / (n + 1);

  // Moments of Y = ((K - lambda) + (U - 1/2)) / m.
  std::array<double, kMaxExactOrder + 1> centered{};
  for (int n = 0; n <= j; ++n) {
    double s = 0.0;
    for (int r = 0; r <= n; ++r) s += binomial(n, r) * poisson[r] * uniform[n - r];
    centered[n] = s / std::pow(static_cast<double>(m), n);
  }

  double total = 0.0;
  for (int r = 0; r <= j; ++r) total += binomial(j, r) * std::pow(shift, j - r) * centered[r];
  return total;
}

double central_moment_from_raw(int j, int m, double a, double x) {
  check_order(j);
  check_arguments(m, a, x);
  double total = 0.0;
  for (int r = 0; r <= j; ++r) {
    total += binomial(j, r) * std::pow(-x, j - r) * raw_moment_exact(r, m, a, x);
  }
  return total;
}

MomentReport moment_report(int order, bool central, const OperatorConfig& cfg, double x) {
  check_order(order);
  check_arguments(cfg.m, cfg.a, x);
  MomentReport report;
  report.order = order;
  report.central = central;
  if (central) {
    report.exact = central_moment_exact(order, cfg.m, cfg.a, x);
    if (order == 0) {
      report.closed_form = 1.0;
    } else if (order <= 4) {
      report.closed_form = central_moment_closed(order, cfg.m, cfg.a, x);
    }
    report.numeric =
        apply_operator([order, x](double t) { return std::pow(t - x, order); }, cfg, x).value;
  } else {
    report.exact = raw_moment_exact(order, cfg.m, cfg.a, x);
    if (order <= 3) report.closed_form = raw_moment_closed(order, cfg.m, cfg.a, x);
    report.numeric = apply_operator([order](double t) { return std::pow(t, order); }, cfg, x).value;
  }
  double worst = std::abs(report.exact - report.numeric);
  if (report.closed_form) {
    worst = std::max({worst, std::abs(*report.closed_form - report.exact),
                      std::abs(*report.closed_form - report.numeric)});
  }
  report.max_discrepancy = worst;
  return report;
}

double asymptotic_limit(int order, double a, double x) {
  if (!(a > 1.0)) throw std::invalid_argument("a must be > 1");
  if (!(x >= 0.0)) throw std::invalid_argument("x must be >= 0");
  switch (order) {
    case 2:
      return x;
    case 3:
      return -0.5 * x * (3.0 * x * std::log(a) - 5.0);
    case 6:
      return 15.0 * x * x * x;
    default:
      throw std::invalid_argument("asymptotic limits exist for orders 2, 3 and 6");
  }
}

double scaled_central_moment(int order, int m, double a, double x) {
  const double mm = m;
  switch (order) {
    case 2:
      return mm * central_moment_exact(2, m, a, x);
    case 3:
      return mm * mm * central_moment_exact(3, m, a, x);
    case 6:
      return mm * mm * mm * central_moment_exact(6, m, a, x);
    default:
      throw std::invalid_argument("asymptotic limits exist for orders 2, 3 and 6");
  }
}

AsymptoticCheck asymptotic_check(int order, double a, double x, std::vector<int> m_values) {
  if (m_values.empty()) throw std::invalid_argument("m sequence must be nonempty");
  std::sort(m_values.begin(), m_values.end());
  AsymptoticCheck check;
  check.order = order;
  check.limit_value = asymptotic_limit(order, a, x);
  check.converged = true;
  double previous = std::numeric_limits<double>::infinity();
  for (int m : m_values) {
    const double value = scaled_central_moment(order, m, a, x);
    check.sequence.emplace_back(m, value);
    const double error = std::abs(value - check.limit_value);
    if (!(error < previous) && !(error == 0.0 && previous == 0.0)) check.converged = false;
    previous = error;
  }
  return check;
}

InequalityPair check_lemma_l2(int m, double a, double x) {
  check_arguments(m, a, x);
  InequalityPair out;
  out.lhs1 = central_moment_closed(1, m, a, x);
  out.rhs1 = 1.0 / (2.0 * m);
  out.lhs2 = central_moment_closed(2, m, a, x);
  out.rhs2 = 1.0 / (3.0 * m * m) + x * (x + 1.0) / m;
  out.first = out.lhs1 <= out.rhs1 * (1.0 + kRoundingSlack);
  out.second = out.lhs2 <= out.rhs2 * (1.0 + kRoundingSlack);
  return out;
}

InequalityPair check_lemma_l3(const OperatorConfig& cfg, double x, double y, double z) {
  if (!(y >= 0.0)) throw std::invalid_argument("y must be >= 0");
  if (!(y < x)) throw std::invalid_argument("tail check needs y < x");
  if (!(z > x)) throw std::invalid_argument("tail check needs z > x");
  const double second_moment = central_moment_closed(2, cfg.m, cfg.a, x);
  InequalityPair out;
  out.lhs1 = kernel_cdf(x, y, cfg);
  out.rhs1 = second_moment / ((x - y) * (x - y));
  out.lhs2 = 1.0 - kernel_cdf(x, z, cfg);
  out.rhs2 = second_moment / ((z - x) * (z - x));
  out.first = out.lhs1 <= out.rhs1 * (1.0 + kRoundingSlack);
  out.second = out.lhs2 <= out.rhs2 * (1.0 + kRoundingSlack);
  return out;
}

}  // namespace szmk
