#ifndef SZMK_KERNEL_HPP_
#define SZMK_KERNEL_HPP_

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "szmk/funcs.hpp"
#include "szmk/gauss_legendre.hpp"

namespace szmk {

inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr int kDefaultQuadOrder = 8;

/// Operator index m, base a and the numerical controls of one evaluation.
/// The constructor enforces m >= 1, a > 1, tail_tol in (0, 1e-6] and
/// quad_order >= 1.
struct OperatorConfig {
  int m;
  double a;
  double tail_tol;
  int quad_order;

  OperatorConfig(int m, double a, double tail_tol = kDefaultTailTol,
                 int quad_order = kDefaultQuadOrder);
};

/// Poisson masses for k in [k_lo, k_hi]. `omitted_mass` is a certified upper
/// bound on the mass outside the range and never exceeds the requested
/// tolerance.
struct WeightRange {
  double lambda = 0.0;
  long k_lo = 0;
  long k_hi = 0;
  Eigen::ArrayXd weights;
  double omitted_mass = 0.0;

  long size() const { return k_hi - k_lo + 1; }
  double weight(long k) const {
    return (k < k_lo || k > k_hi) ? 0.0 : weights[static_cast<Eigen::Index>(k - k_lo)];
  }
};

struct EvalResult {
  double value = 0.0;
  long terms_used = 0;
  double tail_bound = 0.0;
};

/// a^{1/m} - 1 without cancellation for large m.
double base_increment(int m, double a);

/// Poisson mean x log(a) / (a^{1/m} - 1) of the operator weights.
double lambda_param(double x, const OperatorConfig& cfg);

/// Poisson(lambda) probability of k, via the saddle-point form for k >= 1.
double poisson_pmf(long k, double lambda);

/// Contiguous range of Poisson masses grown outward from floor(lambda) by the
/// two-term recurrence until the bounded omitted mass is <= tail_tol.
WeightRange poisson_weights(double lambda, double tail_tol);

namespace detail {

inline void require_non_negative(double x, const char* what) {
  if (!(x >= 0.0)) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

template <class F>
double segment_integral(const F& f, long k, int m, const GaussRule& rule) {
  const double lo = static_cast<double>(k) / m;
  const double hi = static_cast<double>(k + 1) / m;
  const double value = rule.integrate(f, lo, hi);
  if (!std::isfinite(value)) {
    throw std::domain_error("non-finite integrand on segment [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  }
  return value;
}

/// Geometric bounds on the Poisson(lambda) mass below k_lo (p_lo = mass at
/// k_lo) and above k_hi (p_hi = mass at k_hi).
double lower_tail_bound(double lambda, long k_lo, double p_lo);
double upper_tail_bound(double lambda, long k_hi, double p_hi);

inline constexpr long kMaxTailExtension = 100000;

/// Sums the weighted segment averages over `range`, then keeps adding
/// terms on either side while they still move the sum: a fast-growing f can
/// make the mass-based cutoff drop a visible contribution.
template <class F>
EvalResult apply_weights(const F& f, int m, const WeightRange& range, const GaussRule& rule) {
  double value = 0.0;
  double peak = 0.0;
  for (Eigen::Index i = 0; i < range.weights.size(); ++i) {
    const double avg = m * segment_integral(f, range.k_lo + i, m, rule);
    value += range.weights[i] * avg;
    peak = std::max(peak, std::abs(avg));
  }
  const double lambda = range.lambda;
  const double eps = std::numeric_limits<double>::epsilon();
  auto negligible = [&](double p) { return !(p * peak > 0.5 * eps * std::abs(value)); };

  long k_hi = range.k_hi;
  double p_hi = range.weights[range.weights.size() - 1];
  long k_lo = range.k_lo;
  double p_lo = range.weights[0];
  if (lambda > 0.0) {
    for (long extra = 0; extra < kMaxTailExtension; ++extra) {
      const double p = p_hi * lambda / static_cast<double>(k_hi + 1);
      if (p == 0.0 || negligible(upper_tail_bound(lambda, k_hi, p_hi))) break;
      const double avg = m * segment_integral(f, k_hi + 1, m, rule);
      value += p * avg;
      peak = std::max(peak, std::abs(avg));
      ++k_hi;
      p_hi = p;
    }
    while (k_lo > 0 && !negligible(lower_tail_bound(lambda, k_lo, p_lo))) {
      const double p = p_lo * static_cast<double>(k_lo) / lambda;
      const double avg = m * segment_integral(f, k_lo - 1, m, rule);
      value += p * avg;
      peak = std::max(peak, std::abs(avg));
      --k_lo;
      p_lo = p;
    }
  }

  EvalResult out;
  out.value = value;
  out.terms_used = k_hi - k_lo + 1;
  const double omitted =
      lambda > 0.0 ? lower_tail_bound(lambda, k_lo, p_lo) + upper_tail_bound(lambda, k_hi, p_hi) : 0.0;
  out.tail_bound = std::min(omitted, range.omitted_mass) * peak;
  return out;
}

void check_growth_envelope(const TestFunction& f, const WeightRange& range, int m);

}  // namespace detail

/// Gauss-Legendre approximation of the integral of f over [k/m, (k+1)/m].
/// Exact for polynomials of degree <= 2*quad_order - 1. Throws
/// std::domain_error when f is non-finite on the segment.
template <class F>
double segment_integral(const F& f, long k, int m, int quad_order) {
  if (k < 0) throw std::invalid_argument("segment index must be >= 0");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  return detail::segment_integral(f, k, m, cached_gauss_legendre(quad_order));
}

/// Truncated-series evaluation of the operator at x:
///   m * sum_k s_{m,k}(x) * integral_{k/m}^{(k+1)/m} f(t) dt.
/// `tail_bound` is the omitted Poisson mass times the largest segment
/// average over the covered range.
template <class F>
EvalResult apply_operator(const F& f, const OperatorConfig& cfg, double x) {
  detail::require_non_negative(x, "x");
  const WeightRange range = poisson_weights(lambda_param(x, cfg), cfg.tail_tol);
  return detail::apply_weights(f, cfg.m, range, cached_gauss_legendre(cfg.quad_order));
}

/// TestFunction overload: exponential-growth functions are checked for a
/// finite value at the right end of the truncation range first.
EvalResult apply_operator(const TestFunction& f, const OperatorConfig& cfg, double x);

/// Kernel CDF J(x, y): integral over [0, y] of the operator kernel at x.
double kernel_cdf(double x, double y, const OperatorConfig& cfg);

}  // namespace szmk

#endif  // SZMK_KERNEL_HPP_
