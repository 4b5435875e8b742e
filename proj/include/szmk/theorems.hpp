#ifndef SZMK_THEOREMS_HPP_
#define SZMK_THEOREMS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "szmk/funcs.hpp"
#include "szmk/kernel.hpp"
#include "szmk/moduli.hpp"

namespace szmk {

enum class TheoremId { kLipMaximal, kDitzianTotik, kLipUV, kBvRate, kVoronovskaya, kGruss };

std::string_view to_string(TheoremId id);

inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kDefaultBvConstant = 2.0;

/// Right-hand side of an error estimate next to the observed error
/// |R(f; x) - f(x)|. `holds` compares with a relative slack of 1e-9.
struct BoundReport {
  TheoremId theorem = TheoremId::kLipMaximal;
  double x = 0.0;
  int m = 0;
  double a = 0.0;
  double bound = 0.0;
  double observed = 0.0;
  bool holds = false;
  std::vector<std::string> surrogate_flags;
};

/// f with one-sided derivative rules, for the bounded-variation estimate.
struct BVFunction {
  TestFunction base;
  RealFn dplus;
  RealFn dminus;
  std::function<double(double, double, double)> tv_oracle;  ///< may be empty

  /// Throws std::invalid_argument when f carries no derivative metadata.
  static BVFunction from(const TestFunction& f);

  /// Auxiliary derivative f'_x(t): f'(t) - f'(x-) left of x, 0 at x,
  /// f'(t) - f'(x+) right of x.
  double aux_derivative(double x, double t) const;
};

/// |R(f;x) - f(x)| observed on the kernel path.
double observed_error(const TestFunction& f, const OperatorConfig& cfg, double x);

/// eta_alpha(f; x) * (Lambda^2(x))^{alpha/2}; for alpha = 1 this is
/// eta_1(f; x) * sqrt(Lambda^2(x)).
BoundReport bound_lipschitz_maximal(const TestFunction& f, double alpha, const OperatorConfig& cfg,
                                    double x, const GridSpec& grid);

/// 2 * M * dt_modulus(f; u(x) sqrt(Lambda^2(x)) / psi(x)); the K-functional
/// is replaced by its modulus majorant, so the report is always flagged.
/// Requires x > 0.
BoundReport bound_ditzian_totik(const TestFunction& f, const OperatorConfig& cfg, double x,
                                const GridSpec& grid, double majorant_M = 1.0);

/// Argument u(x) sqrt(Lambda^2(x)) / psi(x) of the modulus above.
double ditzian_totik_step(const OperatorConfig& cfg, double x);

/// M * (Lambda^2(x) / (u x^2 + v x))^{a_exp/2}. Requires x > 0.
BoundReport bound_lip_uv(const TestFunction& f, double M, double u, double v, double a_exp,
                         const OperatorConfig& cfg, double x);

/// Term-by-term right-hand side of the bounded-variation estimate.
struct BVTerms {
  double jump_mean = 0.0;          ///< |f'(x+) + f'(x-)| / (4m)
  double jump_spread = 0.0;        ///< sqrt(C x (x+1) / (4m)) |f'(x+) - f'(x-)|
  double left_sum = 0.0;           ///< C (x+1)/m * sum_k V_{x - x/k}^{x} f'_x
  double left_near = 0.0;          ///< x/sqrt(m) * V_{x - x/sqrt(m)}^{x} f'_x
  double right_near = 0.0;         ///< x/sqrt(m) * V_x^{x + x/sqrt(m)} f'_x
  double right_sum = 0.0;          ///< C (x+1)/m * sum_k V_x^{x + x/k} f'_x

  double total() const {
    return jump_mean + jump_spread + left_sum + left_near + right_near + right_sum;
  }
};

/// The k-sums run over k = 0..floor(sqrt(m)); the k = 0 summand, where x/k
/// is undefined, reuses the k = 1 interval. Requires x > 0.
BVTerms bv_terms(const BVFunction& f, int m, double x, double C, int refine_levels);

BoundReport bound_bv(const BVFunction& f, const OperatorConfig& cfg, double x, double C,
                     const GridSpec& grid);

/// m |R(f;x) - f(x) - f'(x) Lambda^1(x) - f''(x) Lambda^2(x) / 2|.
/// Throws std::invalid_argument when f lacks d1 or d2.
double voronovskaya_residual(const TestFunction& f, const OperatorConfig& cfg, double x);

struct VoronovskayaReport {
  double residual = 0.0;
  double weighted_modulus_d2 = 0.0;  ///< weighted modulus of f'' at step 1/sqrt(m)
};

VoronovskayaReport voronovskaya_report(const TestFunction& f, const OperatorConfig& cfg, double x,
                                       const GridSpec& grid);

/// m (R(mu nu; x) - R(mu; x) R(nu; x)). Exactly 0 when either factor is a
/// declared constant, since the operator reproduces constants.
double gruss_quantity(const TestFunction& mu, const TestFunction& nu, const OperatorConfig& cfg,
                      double x);

/// x mu'(x) nu'(x)
double gruss_limit(const TestFunction& mu, const TestFunction& nu, double x);

}  // namespace szmk

#endif  // SZMK_THEOREMS_HPP_
