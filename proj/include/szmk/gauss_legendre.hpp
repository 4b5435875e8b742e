#ifndef SZMK_GAUSS_LEGENDRE_HPP_
#define SZMK_GAUSS_LEGENDRE_HPP_

#include <Eigen/Core>

namespace szmk {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
/// <= 2 * order - 1.
struct GaussRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;

  int order() const { return static_cast<int>(nodes.size()); }

  /// Integral of f over [lo, hi].
  template <class F>
  double integrate(const F& f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

/// Golub-Welsch construction from the symmetric Jacobi matrix of the
/// Legendre recurrence. Nodes are returned in ascending order.
GaussRule gauss_legendre(int order);

/// Process-wide immutable cache over gauss_legendre; safe to call from
/// several threads.
const GaussRule& cached_gauss_legendre(int order);

}  // namespace szmk

#endif  // SZMK_GAUSS_LEGENDRE_HPP_
