#include "szmk/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace szmk {

namespace {

// stirlerr(n) = log(n!) - (n + 1/2) log(n) + n - log(sqrt(2 pi)), n = 1..15.
constexpr std::array<double, 15> kStirlingErrorTable = {
    0.08106146679532725822, 0.041340695955409294094, 0.027677925684998339149,
    0.020790672103765093112, 0.016644691189821192163, 0.013876128823070747999,
    0.011896709945891770095, 0.010411265261972096497, 0.0092554621827127329177,
    0.0083305634333628712565, 0.007573675487951840795, 0.0069428401072095298657,
    0.0064089941880042070684, 0.0059513701127588477356, 0.005554733551962801371,
};

double stirling_error(long n) {
  if (n <= 15) return kStirlingErrorTable[static_cast<std::size_t>(n - 1)];
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// k log(k / mean) + mean - k, summed as a series when k is close to mean.
double deviance_term(double k, double mean) {
  if (std::abs(k - mean) < 0.1 * (k + mean)) {
    double v = (k - mean) / (k + mean);
    double s = (k - mean) * v;
    double ej = 2.0 * k * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return k * std::log(k / mean) + mean - k;
}

}  // namespace

OperatorConfig::OperatorConfig(int m_, double a_, double tail_tol_, int quad_order_)
    : m(m_), a(a_), tail_tol(tail_tol_), quad_order(quad_order_) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(a > 1.0) || !std::isfinite(a)) throw std::invalid_argument("a must be > 1");
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) {
    throw std::invalid_argument("tail_tol must lie in (0, 1e-6]");
  }
  if (quad_order < 1) throw std::invalid_argument("quad_order must be >= 1");
}

double base_increment(int m, double a) {
  if (!(a > 1.0)) throw std::invalid_argument("a must be > 1");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  return std::expm1(std::log(a) / m);
}

double lambda_param(double x, const OperatorConfig& cfg) {
  detail::require_non_negative(x, "x");
  return x * std::log(cfg.a) / base_increment(cfg.m, cfg.a);
}

double poisson_pmf(long k, double lambda) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  if (k == 0) return std::exp(-lambda);
  const double kd = static_cast<double>(k);
  return std::exp(-stirling_error(k) - deviance_term(kd, lambda)) /
         std::sqrt(2.0 * std::numbers::pi * kd);
}

WeightRange poisson_weights(double lambda, double tail_tol) {
  detail::require_non_negative(lambda, "lambda");
  if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) {
    throw std::invalid_argument("tail_tol must lie in (0, 1e-6]");
  }
  WeightRange out;
  out.lambda = lambda;
  if (lambda == 0.0) {
    out.weights = Eigen::ArrayXd::Ones(1);
    return out;
  }

  const long mode = static_cast<long>(std::floor(lambda));
  std::vector<double> below;  // k = mode-1, mode-2, ...
  std::vector<double> above;  // k = mode, mode+1, ...
  above.push_back(poisson_pmf(mode, lambda));
  long k_lo = mode;
  long k_hi = mode;
  double p_lo = above.front();
  double p_hi = above.front();

  auto lower_tail = [&] { return detail::lower_tail_bound(lambda, k_lo, p_lo); };
  auto upper_tail = [&] { return detail::upper_tail_bound(lambda, k_hi, p_hi); };

  double lo_tail = lower_tail();
  double hi_tail = upper_tail();
  while (lo_tail + hi_tail > tail_tol) {
    if (lo_tail >= hi_tail) {
      p_lo *= static_cast<double>(k_lo) / lambda;
      --k_lo;
      below.push_back(p_lo);
      lo_tail = lower_tail();
    } else {
      ++k_hi;
      p_hi *= lambda / static_cast<double>(k_hi);
      above.push_back(p_hi);
      hi_tail = upper_tail();
    }
  }

  out.k_lo = k_lo;
  out.k_hi = k_hi;
  out.weights.resize(static_cast<Eigen::Index>(below.size() + above.size()));
  Eigen::Index i = 0;
  for (auto it = below.rbegin(); it != below.rend(); ++it) out.weights[i++] = *it;
  for (double p : above) out.weights[i++] = p;
  out.omitted_mass = lo_tail + hi_tail;
  return out;
}

namespace detail {

// Successive ratios shrink moving away from the mode, so each tail is below
// a geometric series started at the first omitted term.
double lower_tail_bound(double lambda, long k_lo, double p_lo) {
  if (k_lo == 0) return 0.0;
  const double next = p_lo * static_cast<double>(k_lo) / lambda;
  return next / (1.0 - static_cast<double>(k_lo - 1) / lambda);
}

double upper_tail_bound(double lambda, long k_hi, double p_hi) {
  const double next = p_hi * lambda / static_cast<double>(k_hi + 1);
  return next / (1.0 - lambda / static_cast<double>(k_hi + 2));
}

void check_growth_envelope(const TestFunction& f, const WeightRange& range, int m) {
  if (f.growth != GrowthClass::kExponential) return;
  const double right = static_cast<double>(range.k_hi + 1) / m;
  if (!std::isfinite(f(right))) {
    throw std::domain_error("function '" + f.name + "' overflows at t = " + std::to_string(right) +
                            " inside the truncation range");
  }
}

}  // namespace detail

EvalResult apply_operator(const TestFunction& f, const OperatorConfig& cfg, double x) {
  detail::require_non_negative(x, "x");
  const WeightRange range = poisson_weights(lambda_param(x, cfg), cfg.tail_tol);
  detail::check_growth_envelope(f, range, cfg.m);
  return detail::apply_weights(f, cfg.m, range, cached_gauss_legendre(cfg.quad_order));
}

double kernel_cdf(double x, double y, const OperatorConfig& cfg) {
  detail::require_non_negative(x, "x");
  detail::require_non_negative(y, "y");
  const WeightRange range = poisson_weights(lambda_param(x, cfg), cfg.tail_tol);
  const double scaled = y * cfg.m;
  if (!std::isfinite(scaled)) return range.weights.sum();
  const double whole = std::floor(scaled);
  const long full = static_cast<long>(std::min(whole, static_cast<double>(range.k_hi + 1)));
  double sum = 0.0;
  for (long k = range.k_lo; k < full; ++k) sum += range.weight(k);
  if (full <= range.k_hi) sum += (scaled - whole) * range.weight(full);
  return std::min(sum, 1.0);
}

}  // namespace szmk
