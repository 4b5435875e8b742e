#ifndef SZMK_POLYMOMENTS_HPP_
#define SZMK_POLYMOMENTS_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "szmk/kernel.hpp"

namespace szmk {

inline constexpr int kMaxExactOrder = 20;

/// Closed forms of the operator applied to e_i, i = 0..3, written in terms
/// of A = a^{1/m} - 1 and L = log a.
template <class Scalar>
Scalar raw_moment_closed(int i, int m, Scalar a, Scalar x) {
  if (i < 0 || i > 3) throw std::invalid_argument("closed raw moments exist for orders 0..3");
  const Scalar mm = static_cast<Scalar>(m);
  const Scalar L = std::log(a);
  const Scalar A = std::expm1(L / mm);
  const Scalar r = x * L / A;  // Poisson mean
  switch (i) {
    case 0:
      return Scalar(1);
    case 1:
      return Scalar(1) / (2 * mm) + r / mm;
    case 2:
      return Scalar(1) / (3 * mm * mm) + 2 * r / (mm * mm) + r * r / (mm * mm);
    default: {
      const Scalar m3 = mm * mm * mm;
      return Scalar(1) / (4 * m3) + Scalar(7) / 2 * r / m3 + Scalar(9) / 2 * r * r / m3 +
             r * r * r / m3;
    }
  }
}

/// Closed forms of the central moments Lambda^j(x) = R(( t - x)^j; x), j = 1..4.
/// The cubic term of j = 3 carries A^3 in its denominator, matching the
/// binomial expansion of the raw moments.
template <class Scalar>
Scalar central_moment_closed(int j, int m, Scalar a, Scalar x) {
  if (j < 1 || j > 4) throw std::invalid_argument("closed central moments exist for orders 1..4");
  const Scalar mm = static_cast<Scalar>(m);
  const Scalar L = std::log(a);
  const Scalar A = std::expm1(L / mm);
  const Scalar mx = mm * x;
  switch (j) {
    case 1:
      return -(-1 + 2 * mx) / (2 * mm) + x * L / (mm * A);
    case 2:
      return (1 - 3 * mx + 3 * mx * mx) / (3 * mm * mm) -
             2 * A * (-1 + mx) * x * L / (A * A * mm * mm) + x * x * L * L / (A * A * mm * mm);
    case 3: {
      const Scalar m3 = mm * mm * mm;
      return -(-1 + 4 * mx - 6 * mx * mx + 4 * mx * mx * mx) / (4 * m3) +
             x * (7 - 12 * mx + 6 * mx * mx) * L / (2 * A * m3) -
             3 * x * x * (-3 + 2 * mx) * L * L / (2 * A * A * m3) +
             x * x * x * L * L * L / (A * A * A * m3);
    }
    default: {
      const Scalar A2 = A * A;
      const Scalar A3 = A2 * A;
      const Scalar A4 = A2 * A2;
      const Scalar mx2 = mx * mx;
      const Scalar mx3 = mx2 * mx;
      const Scalar numerator =
          A4 * (1 - 5 * mx + 10 * mx2 - 10 * mx3 + 5 * mx2 * mx2) -
          10 * A3 * x * (-3 + 7 * mx - 6 * mx2 + 2 * mx3) * L +
          15 * A2 * x * x * (5 - 6 * mx + 2 * mx2) * L * L - 20 * A * x * x * x * (-2 + mx) * L * L * L +
          5 * x * x * x * x * L * L * L * L;
      return numerator / (5 * A4 * mm * mm * mm * mm);
    }
  }
}

/// Stirling numbers of the second kind S(n, k), 0 <= k <= n <= 20.
/// Built once by the standard recurrence; immutable afterwards.
double stirling2(int n, int k);

/// Exact operator moment of e_j through Poisson moments
/// E[K^i] = sum_r S(i, r) lambda^r. No truncation error. Orders 0..20.
double raw_moment_exact(int j, int m, double a, double x);

/// Exact central moment Lambda^j(x).
///
/// Evaluated through T - x = (K - lambda)/m + (U - 1/2)/m + delta, with K
/// Poisson and U uniform on [0,1], so no large terms cancel; this equals
/// central_moment_from_raw but keeps full relative accuracy for large m.
double central_moment_exact(int j, int m, double a, double x);

/// sum_r C(j, r) (-x)^{j-r} raw_moment_exact(r). Loses accuracy as m grows.
double central_moment_from_raw(int j, int m, double a, double x);

struct MomentReport {
  int order = 0;
  bool central = false;
  std::optional<double> closed_form;
  double exact = 0.0;
  double numeric = 0.0;
  double max_discrepancy = 0.0;
};

/// Closed form (when one exists), exact engine and kernel path side by side.
MomentReport moment_report(int order, bool central, const OperatorConfig& cfg, double x);

/// Limits of m*Lambda^2, m^2*Lambda^3 and m^3*Lambda^6 as m grows.
double asymptotic_limit(int order, double a, double x);

/// m^{order/2} Lambda^order for order 2 and 6; m^2 Lambda^3 for order 3.
double scaled_central_moment(int order, int m, double a, double x);

struct AsymptoticCheck {
  int order = 0;
  double limit_value = 0.0;
  std::vector<std::pair<int, double>> sequence;
  bool converged = false;  ///< distance to the limit strictly decreases along m
};

AsymptoticCheck asymptotic_check(int order, double a, double x, std::vector<int> m_values);

struct InequalityPair {
  bool first = false;
  bool second = false;
  double lhs1 = 0.0;
  double rhs1 = 0.0;
  double lhs2 = 0.0;
  double rhs2 = 0.0;
};

/// Lambda^1 <= 1/(2m) and Lambda^2 <= 1/(3m^2) + x(x+1)/m.
InequalityPair check_lemma_l2(int m, double a, double x);

/// J(x, y) <= Lambda^2/(x - y)^2 and 1 - J(x, z) <= Lambda^2/(z - x)^2 for
/// 0 <= y < x < z.
InequalityPair check_lemma_l3(const OperatorConfig& cfg, double x, double y, double z);

}  // namespace szmk

#endif  // SZMK_POLYMOMENTS_HPP_
