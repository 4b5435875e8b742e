#ifndef SZMK_FUNCS_HPP_
#define SZMK_FUNCS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace szmk {

using RealFn = std::function<double(double)>;

enum class GrowthClass { kBounded, kPolynomial, kExponential };

std::string_view to_string(GrowthClass growth);

/// One-sided derivative rules for functions whose derivative has bounded
/// variation. `aux_tv`, when present, is the exact variation of the
/// auxiliary derivative f'_x on [lo, hi]: aux_tv(x, lo, hi).
struct BVMetadata {
  RealFn dplus;
  RealFn dminus;
  std::function<double(double, double, double)> aux_tv;
};

/// Named real function with optional analytic derivatives.
///
/// `d1` and `d2`, when present, agree with central differences of `eval`
/// (see finite_diff_check). `constant_value` is set only for functions that
/// are identically constant.
struct TestFunction {
  std::string name;
  RealFn eval;
  std::optional<RealFn> d1;
  std::optional<RealFn> d2;
  GrowthClass growth = GrowthClass::kPolynomial;
  std::optional<BVMetadata> bv;
  std::optional<double> constant_value;

  double operator()(double t) const { return eval(t); }

  double derivative(double t) const;
  double second_derivative(double t) const;
};

/// Returns the named function. Accepted names: e0, e1, e2, e3, e4,
/// x2expx, xcos2x1, sqrt, cos, abs_shift(c), constant(c). The parametric
/// forms default to c = 1 when written without parentheses.
///
/// Throws std::invalid_argument listing the available names on a miss.
TestFunction registry_get(std::string_view name);

std::vector<std::string> registry_names();

TestFunction monomial(int degree);
TestFunction constant_function(double c);
TestFunction abs_shift(double c);

/// Pointwise product with product-rule derivatives (present when both
/// factors carry them).
TestFunction product(const TestFunction& lhs, const TestFunction& rhs);

/// Wraps f'' as a TestFunction (no further derivative metadata).
TestFunction second_derivative_of(const TestFunction& f);

struct DerivativeDeviation {
  double d1 = 0.0;
  double d2 = 0.0;  ///< 0 when f has no d2
};

/// Relative deviation of the analytic derivatives from central differences
/// with step 1e-5: d1 against f, d2 against d1.
///
/// Throws std::invalid_argument when f has no d1.
DerivativeDeviation finite_diff_check(const TestFunction& f, double x);

}  // namespace szmk

#endif  // SZMK_FUNCS_HPP_
