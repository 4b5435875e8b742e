#include "szmk/theorems.hpp"

#include <cmath>
#include <stdexcept>

#include "szmk/polymoments.hpp"

namespace szmk {

namespace {

constexpr const char* kSurrogateKFunctional = "K-functional via modulus relation";
constexpr const char* kSurrogateConstantC = "unspecified constant C";

BoundReport make_report(TheoremId id, const OperatorConfig& cfg, double x, double bound,
                        double observed) {
  BoundReport report;
  report.theorem = id;
  report.x = x;
  report.m = cfg.m;
  report.a = cfg.a;
  report.bound = bound;
  report.observed = observed;
  report.holds = observed <= bound * (1.0 + kBoundSlack);
  return report;
}

double second_central(const OperatorConfig& cfg, double x) {
  return central_moment_exact(2, cfg.m, cfg.a, x);
}

}  // namespace

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::kLipMaximal:
      return "LIP_MAXIMAL";
    case TheoremId::kDitzianTotik:
      return "DITZIAN_TOTIK";
    case TheoremId::kLipUV:
      return "LIP_UV";
    case TheoremId::kBvRate:
      return "BV_RATE";
    case TheoremId::kVoronovskaya:
      return "VORONOVSKAYA";
    case TheoremId::kGruss:
      return "GRUSS";
  }
  return "UNKNOWN";
}

BVFunction BVFunction::from(const TestFunction& f) {
  if (!f.bv || !f.d1) {
    throw std::invalid_argument("function '" + f.name + "' has no one-sided derivative data");
  }
  return BVFunction{f, f.bv->dplus, f.bv->dminus, f.bv->aux_tv};
}

double BVFunction::aux_derivative(double x, double t) const {
  if (t < x) return base.derivative(t) - dminus(x);
  if (t > x) return base.derivative(t) - dplus(x);
  return 0.0;
}

double observed_error(const TestFunction& f, const OperatorConfig& cfg, double x) {
  // Constants are reproduced exactly by the operator.
  if (f.constant_value) return 0.0;
  return std::abs(apply_operator(f, cfg, x).value - f(x));
}

BoundReport bound_lipschitz_maximal(const TestFunction& f, double alpha, const OperatorConfig& cfg,
                                    double x, const GridSpec& grid) {
  const double eta = lipschitz_maximal(f, x, alpha, grid).value;
  // R(|t-x|^alpha) <= (Lambda^2)^{alpha/2} by Hoelder with p = 2/alpha.
  return make_report(TheoremId::kLipMaximal, cfg, x,
                     eta * std::pow(second_central(cfg, x), 0.5 * alpha), observed_error(f, cfg, x));
}

double ditzian_totik_step(const OperatorConfig& cfg, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("Ditzian-Totik estimate needs x > 0");
  return u_of_x(x) * std::sqrt(second_central(cfg, x)) / psi(x);
}

BoundReport bound_ditzian_totik(const TestFunction& f, const OperatorConfig& cfg, double x,
                                const GridSpec& grid, double majorant_M) {
  const double step = ditzian_totik_step(cfg, x);
  if (!(majorant_M > 0.0)) throw std::invalid_argument("majorant M must be > 0");
  const double modulus = dt_modulus(f, step, grid).value;
  auto report = make_report(TheoremId::kDitzianTotik, cfg, x, 2.0 * majorant_M * modulus,
                            observed_error(f, cfg, x));
  report.surrogate_flags.emplace_back(kSurrogateKFunctional);
  return report;
}

BoundReport bound_lip_uv(const TestFunction& f, double M, double u, double v, double a_exp,
                         const OperatorConfig& cfg, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("two-parameter Lipschitz estimate needs x > 0");
  if (!(u > 0.0 && v > 0.0)) throw std::invalid_argument("u and v must be > 0");
  if (!(a_exp > 0.0 && a_exp <= 1.0)) throw std::invalid_argument("exponent must lie in (0, 1]");
  if (!(M >= 0.0)) throw std::invalid_argument("M must be >= 0");
  const double ratio = second_central(cfg, x) / (u * x * x + v * x);
  return make_report(TheoremId::kLipUV, cfg, x, M * std::pow(ratio, 0.5 * a_exp),
                     observed_error(f, cfg, x));
}

BVTerms bv_terms(const BVFunction& f, int m, double x, double C, int refine_levels) {
  if (!(x > 0.0)) throw std::invalid_argument("bounded-variation estimate needs x > 0");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(C > 0.0)) throw std::invalid_argument("C must be > 0");
  auto aux = [&](double t) { return f.aux_derivative(x, t); };
  auto variation = [&](double lo, double hi) {
    if (!(lo < hi)) return 0.0;
    return total_variation(aux, lo, hi, refine_levels);
  };

  const double dp = f.dplus(x);
  const double dm = f.dminus(x);
  const double root_m = std::sqrt(static_cast<double>(m));
  const int k_max = static_cast<int>(std::floor(root_m));

  BVTerms terms;
  terms.jump_mean = std::abs(dp + dm) / (4.0 * m);
  terms.jump_spread = std::sqrt(C * x * (x + 1.0) / (4.0 * m)) * std::abs(dp - dm);

  double left = 0.0;
  double right = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    const double reach = x / std::max(k, 1);
    left += variation(x - reach, x);
    right += variation(x, x + reach);
  }
  terms.left_sum = C * (x + 1.0) / m * left;
  terms.right_sum = C * (x + 1.0) / m * right;
  terms.left_near = x / root_m * variation(x - x / root_m, x);
  terms.right_near = x / root_m * variation(x, x + x / root_m);
  return terms;
}

BoundReport bound_bv(const BVFunction& f, const OperatorConfig& cfg, double x, double C,
                     const GridSpec& grid) {
  const BVTerms terms = bv_terms(f, cfg.m, x, C, grid.refine_levels);
  auto report = make_report(TheoremId::kBvRate, cfg, x, terms.total(), observed_error(f.base, cfg, x));
  report.surrogate_flags.emplace_back(kSurrogateConstantC);
  return report;
}

double voronovskaya_residual(const TestFunction& f, const OperatorConfig& cfg, double x) {
  if (!f.d1 || !f.d2) {
    throw std::invalid_argument("Voronovskaya residual needs first and second derivatives of '" +
                                f.name + "'");
  }
  const double first = central_moment_exact(1, cfg.m, cfg.a, x);
  const double second = central_moment_exact(2, cfg.m, cfg.a, x);
  const double value = apply_operator(f, cfg, x).value;
  return cfg.m * std::abs(value - f(x) - f.derivative(x) * first -
                          0.5 * f.second_derivative(x) * second);
}

VoronovskayaReport voronovskaya_report(const TestFunction& f, const OperatorConfig& cfg, double x,
                                       const GridSpec& grid) {
  VoronovskayaReport report;
  report.residual = voronovskaya_residual(f, cfg, x);
  report.weighted_modulus_d2 =
      weighted_modulus(second_derivative_of(f), 1.0 / std::sqrt(static_cast<double>(cfg.m)), grid)
          .value;
  return report;
}

double gruss_quantity(const TestFunction& mu, const TestFunction& nu, const OperatorConfig& cfg,
                      double x) {
  detail::require_non_negative(x, "x");
  if (mu.constant_value || nu.constant_value) return 0.0;
  const TestFunction joint = product(mu, nu);
  const WeightRange range = poisson_weights(lambda_param(x, cfg), cfg.tail_tol);
  detail::check_growth_envelope(joint, range, cfg.m);
  const GaussRule& rule = cached_gauss_legendre(cfg.quad_order);
  const double r_joint = detail::apply_weights(joint, cfg.m, range, rule).value;
  const double r_mu = detail::apply_weights(mu, cfg.m, range, rule).value;
  const double r_nu = detail::apply_weights(nu, cfg.m, range, rule).value;
  return cfg.m * (r_joint - r_mu * r_nu);
}

double gruss_limit(const TestFunction& mu, const TestFunction& nu, double x) {
  return x * mu.derivative(x) * nu.derivative(x);
}

}  // namespace szmk
