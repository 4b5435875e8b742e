#ifndef SZMK_MODULI_HPP_
#define SZMK_MODULI_HPP_

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace szmk {

/// Uniform sample window for empirical suprema. Suprema over [0, inf) are
/// truncated to [lo, hi]; `refine_levels` dyadic passes refine around the
/// best coarse sample.
struct GridSpec {
  double lo = 0.0;
  double hi = 10.0;
  int points = 1001;
  int refine_levels = 3;

  GridSpec() = default;
  GridSpec(double lo, double hi, int points, int refine_levels = 3);

  double spacing() const { return (hi - lo) / (points - 1); }
  Eigen::ArrayXd nodes() const { return Eigen::ArrayXd::LinSpaced(points, lo, hi); }
};

struct ModulusResult {
  double value = 0.0;
  double argmax_x = 0.0;
  double argmax_step = 0.0;  ///< t for the Lipschitz maximal function, h otherwise
  GridSpec grid;
};

/// sqrt(x (1 + x))
double psi(double x);
/// sqrt(x) + sqrt(1 + x)
double u_of_x(double x);

namespace detail {

inline constexpr int kStepShells = 10;
inline constexpr int kStepsPerShell = 8;

/// Step samples in (0, eps]: dyadic shells [eps 2^{-j-1}, eps 2^{-j}] with a
/// uniform set in each. Halving eps drops one outer shell, so the sample sets
/// are nested up to the innermost shell.
std::vector<double> step_samples(double eps);

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

}  // namespace detail

/// Lipschitz maximal function at a fixed x:
///   sup_{t != x} |f(t) - f(x)| / |t - x|^alpha   over the grid window.
template <class F>
ModulusResult lipschitz_maximal(const F& f, double x, double alpha, const GridSpec& grid) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (x < grid.lo || x > grid.hi) throw std::invalid_argument("x must lie inside the grid window");
  const double fx = f(x);
  auto quotient = [&](double t) { return std::abs(f(t) - fx) / std::pow(std::abs(t - x), alpha); };

  ModulusResult out;
  out.grid = grid;
  out.argmax_x = x;
  bool found = false;
  const Eigen::ArrayXd nodes = grid.nodes();
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    const double t = nodes[i];
    if (t == x) continue;
    const double q = quotient(t);
    if (!found || q > out.value) {
      out.value = q;
      out.argmax_step = t;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("grid has no sample distinct from x");

  double spacing = grid.spacing();
  for (int level = 0; level < grid.refine_levels; ++level) {
    spacing *= 0.5;
    const double center = out.argmax_step;
    for (int s = -2; s <= 2; ++s) {
      const double t = std::clamp(center + s * spacing, grid.lo, grid.hi);
      if (t == x || s == 0) continue;
      const double q = quotient(t);
      if (q > out.value) {
        out.value = q;
        out.argmax_step = t;
      }
    }
  }
  return out;
}

/// Global variant: sup over grid pairs t != x of the same quotient.
template <class F>
ModulusResult lipschitz_maximal_global(const F& f, double alpha, const GridSpec& grid) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  const Eigen::ArrayXd nodes = grid.nodes();
  const Eigen::ArrayXd values = nodes.unaryExpr([&](double t) { return f(t); });
  ModulusResult out;
  out.grid = grid;
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    for (Eigen::Index j = i + 1; j < nodes.size(); ++j) {
      const double q = std::abs(values[j] - values[i]) / std::pow(nodes[j] - nodes[i], alpha);
      if (q > out.value) {
        out.value = q;
        out.argmax_x = nodes[i];
        out.argmax_step = nodes[j];
      }
    }
  }
  return out;
}

/// Ditzian-Totik modulus with step weight psi:
///   sup |f(x + h psi(x)/2) - f(x - h psi(x)/2)| over h in (0, eps] and grid x
/// with both arguments inside (0, grid.hi].
template <class F>
ModulusResult dt_modulus(const F& f, double eps, const GridSpec& grid) {
  detail::require_positive(eps, "eps");
  const std::vector<double> steps = detail::step_samples(eps);
  auto feasible = [&](double x, double h) {
    const double half = 0.5 * h * psi(x);
    return x - half > 0.0 && x + half <= grid.hi && h > 0.0 && h <= eps;
  };
  auto difference = [&](double x, double h) {
    const double half = 0.5 * h * psi(x);
    return std::abs(f(x + half) - f(x - half));
  };

  ModulusResult out;
  out.grid = grid;
  bool found = false;
  const Eigen::ArrayXd nodes = grid.nodes();
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    if (!(x > 0.0)) continue;
    for (double h : steps) {
      if (!feasible(x, h)) continue;
      const double d = difference(x, h);
      if (!found || d > out.value) {
        out.value = d;
        out.argmax_x = x;
        out.argmax_step = h;
        found = true;
      }
    }
  }
  if (!found) throw std::invalid_argument("no (x, h) pair satisfies the Ditzian-Totik domain constraint");

  double dx = grid.spacing();
  double dh = out.argmax_step / (2.0 * detail::kStepsPerShell);
  for (int level = 0; level < grid.refine_levels; ++level) {
    dx *= 0.5;
    dh *= 0.5;
    const double cx = out.argmax_x;
    const double ch = out.argmax_step;
    for (int sx = -1; sx <= 1; ++sx) {
      for (int sh = -1; sh <= 1; ++sh) {
        const double x = cx + sx * dx;
        const double h = std::min(ch + sh * dh, eps);
        if ((sx == 0 && sh == 0) || !feasible(x, h)) continue;
        const double d = difference(x, h);
        if (d > out.value) {
          out.value = d;
          out.argmax_x = x;
          out.argmax_step = h;
        }
      }
    }
  }
  return out;
}

/// Smallest M on the grid with |f(y) - f(x)| <= M |y - x|^a / (y + u x^2 + v x)^{a/2}
/// for the fixed point x > 0 and every grid y != x.
template <class F>
double lip_uv_constant_at(const F& f, double x, double u, double v, double a_exp,
                          const GridSpec& grid) {
  detail::require_positive(u, "u");
  detail::require_positive(v, "v");
  detail::require_positive(x, "x");
  if (!(a_exp > 0.0 && a_exp <= 1.0)) throw std::invalid_argument("exponent must lie in (0, 1]");
  const double fx = f(x);
  const double base = u * x * x + v * x;
  const Eigen::ArrayXd nodes = grid.nodes();
  double best = 0.0;
  bool found = false;
  for (Eigen::Index j = 0; j < nodes.size(); ++j) {
    const double y = nodes[j];
    if (y == x) continue;
    found = true;
    const double q = std::abs(f(y) - fx) * std::pow(y + base, 0.5 * a_exp) /
                     std::pow(std::abs(y - x), a_exp);
    best = std::max(best, q);
  }
  if (!found) throw std::invalid_argument("degenerate grid for the two-parameter Lipschitz constant");
  return best;
}

/// Global empirical constant: sup over grid pairs with x > 0, y != x. Pairs
/// with x = 0 are excluded since the theorem only uses the pointwise weight
/// u x^2 + v x, which vanishes there.
template <class F>
double lip_uv_constant(const F& f, double u, double v, double a_exp, const GridSpec& grid) {
  detail::require_positive(u, "u");
  detail::require_positive(v, "v");
  if (!(a_exp > 0.0 && a_exp <= 1.0)) throw std::invalid_argument("exponent must lie in (0, 1]");
  const Eigen::ArrayXd nodes = grid.nodes();
  const Eigen::ArrayXd values = nodes.unaryExpr([&](double t) { return f(t); });
  double best = 0.0;
  bool found = false;
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    if (!(x > 0.0)) continue;
    const double base = u * x * x + v * x;
    for (Eigen::Index j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      found = true;
      const double y = nodes[j];
      const double q = std::abs(values[j] - values[i]) * std::pow(y + base, 0.5 * a_exp) /
                       std::pow(std::abs(y - x), a_exp);
      best = std::max(best, q);
    }
  }
  if (!found) throw std::invalid_argument("degenerate grid for the two-parameter Lipschitz constant");
  return best;
}

/// Weighted modulus sup |f(x + h) - f(x)| / ((1 + h^2)(1 + x^2)) over
/// h in [0, xi] and grid x.
template <class F>
ModulusResult weighted_modulus(const F& f, double xi, const GridSpec& grid) {
  detail::require_positive(xi, "xi");
  const std::vector<double> steps = detail::step_samples(xi);
  auto quotient = [&](double x, double h) {
    return std::abs(f(x + h) - f(x)) / ((1.0 + h * h) * (1.0 + x * x));
  };
  ModulusResult out;
  out.grid = grid;
  const Eigen::ArrayXd nodes = grid.nodes();
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    for (double h : steps) {
      const double q = quotient(nodes[i], h);
      if (q > out.value) {
        out.value = q;
        out.argmax_x = nodes[i];
        out.argmax_step = h;
      }
    }
  }
  if (out.value == 0.0) return out;

  double dx = grid.spacing();
  double dh = out.argmax_step / (2.0 * detail::kStepsPerShell);
  for (int level = 0; level < grid.refine_levels; ++level) {
    dx *= 0.5;
    dh *= 0.5;
    const double cx = out.argmax_x;
    const double ch = out.argmax_step;
    for (int sx = -1; sx <= 1; ++sx) {
      for (int sh = -1; sh <= 1; ++sh) {
        if (sx == 0 && sh == 0) continue;
        const double x = std::clamp(cx + sx * dx, grid.lo, grid.hi);
        const double h = std::clamp(ch + sh * dh, 0.0, xi);
        const double q = quotient(x, h);
        if (q > out.value) {
          out.value = q;
          out.argmax_x = x;
          out.argmax_step = h;
        }
      }
    }
  }
  return out;
}

inline constexpr int kVariationInitialIntervals = 256;
inline constexpr double kVariationRelativeChange = 1e-6;

/// Partition-sum estimate of the total variation on [lo, hi]. The uniform
/// partition is refined dyadically until the relative change drops below
/// 1e-6 or `refine_levels` passes are spent; the estimate never decreases.
template <class F>
double total_variation(const F& f, double lo, double hi, int refine_levels) {
  if (!(lo < hi)) throw std::invalid_argument("total variation needs lo < hi");
  if (refine_levels < 0) throw std::invalid_argument("refine_levels must be >= 0");
  auto sample = [&](double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw std::domain_error("non-finite function value at t = " + std::to_string(t));
    }
    return v;
  };
  long intervals = kVariationInitialIntervals;
  std::vector<double> values(static_cast<std::size_t>(intervals + 1));
  for (long i = 0; i <= intervals; ++i) values[i] = sample(lo + (hi - lo) * i / intervals);
  auto partition_sum = [](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) s += std::abs(v[i] - v[i - 1]);
    return s;
  };
  double variation = partition_sum(values);
  for (int level = 0; level < refine_levels; ++level) {
    const long refined = intervals * 2;
    std::vector<double> next(static_cast<std::size_t>(refined + 1));
    for (long i = 0; i <= refined; ++i) {
      next[i] = (i % 2 == 0) ? values[i / 2] : sample(lo + (hi - lo) * i / refined);
    }
    const double estimate = std::max(variation, partition_sum(next));
    const double change = estimate - variation;
    values = std::move(next);
    intervals = refined;
    variation = estimate;
    if (change <= kVariationRelativeChange * variation) break;
  }
  return variation;
}

}  // namespace szmk

#endif  // SZMK_MODULI_HPP_
