// Independent reference computations for tests. Nothing here calls the
// library's evaluation paths.
#ifndef SZMK_TESTS_ORACLES_HPP_
#define SZMK_TESTS_ORACLES_HPP_

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// e^{-lambda} lambda^k / k! by the factorial series, in long double.
inline long double poisson_factorial(int k, long double lambda) {
  long double p = std::exp(-lambda);
  for (int i = 1; i <= k; ++i) p *= lambda / i;
  return p;
}

/// Integral of t^j over [lo, hi] via the antiderivative.
inline long double monomial_integral(int j, long double lo, long double hi) {
  return (std::pow(hi, j + 1) - std::pow(lo, j + 1)) / (j + 1);
}

/// Direct Poisson sum of m * int_{k/m}^{(k+1)/m} t^j dt with weights from the
/// factorial recurrence in long double, rounded to a fixed number of terms
/// well past the Poisson bulk. Only for lambda < ~5000.
inline long double operator_monomial(int j, int m, long double a, long double x) {
  const long double lambda = x * std::log(a) / (std::pow(a, 1.0L / m) - 1.0L);
  const int terms = static_cast<int>(lambda + 40.0L * std::sqrt(lambda + 1.0L) + 60.0L);
  // Log-space start so e^{-lambda} does not underflow for lambda up to a few thousand.
  long double sum = 0.0L;
  for (int k = 0; k < terms; ++k) {
    const long double log_p = -lambda + (k > 0 ? k * std::log(lambda) : 0.0L) - std::lgamma(k + 1.0L);
    const long double p = (lambda == 0.0L) ? (k == 0 ? 1.0L : 0.0L) : std::exp(log_p);
    sum += p * m * monomial_integral(j, static_cast<long double>(k) / m,
                                     static_cast<long double>(k + 1) / m);
  }
  return sum;
}

/// Brute-force sup of g over the listed samples.
inline double grid_sup(const std::vector<double>& samples, const std::function<double(double)>& g) {
  double best = 0.0;
  for (double s : samples) best = std::max(best, g(s));
  return best;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace oracle

#endif  // SZMK_TESTS_ORACLES_HPP_
