#include "szmk/moduli.hpp"

#include <cmath>

namespace szmk {

GridSpec::GridSpec(double lo_, double hi_, int points_, int refine_levels_)
    : lo(lo_), hi(hi_), points(points_), refine_levels(refine_levels_) {
  if (!(lo >= 0.0)) throw std::invalid_argument("grid lo must be >= 0");
  if (!(hi > lo)) throw std::invalid_argument("grid hi must exceed lo");
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (refine_levels < 0) throw std::invalid_argument("refine_levels must be >= 0");
}

double psi(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("psi needs x >= 0");
  return std::sqrt(x * (1.0 + x));
}

double u_of_x(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("u needs x >= 0");
  return std::sqrt(x) + std::sqrt(1.0 + x);
}

namespace detail {

std::vector<double> step_samples(double eps) {
  std::vector<double> steps;
  steps.reserve(kStepShells * kStepsPerShell);
  double outer = eps;
  for (int shell = 0; shell < kStepShells; ++shell) {
    const double inner = 0.5 * outer;
    for (int i = kStepsPerShell; i >= 1; --i) {
      steps.push_back(inner + (outer - inner) * i / kStepsPerShell);
    }
    outer = inner;
  }
  steps.front() = eps;
  return steps;
}

}  // namespace detail

}  // namespace szmk
