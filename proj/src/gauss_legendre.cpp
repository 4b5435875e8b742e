#include "szmk/gauss_legendre.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace szmk {

GaussRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  GaussRule rule;
  if (order == 1) {
    rule.nodes = Eigen::ArrayXd::Zero(1);
    rule.weights = Eigen::ArrayXd::Constant(1, 2.0);
    return rule;
  }
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Golub-Welsch eigensolve failed");
  }
  rule.nodes = solver.eigenvalues().array();
  rule.weights = 2.0 * solver.eigenvectors().row(0).array().square().transpose();
  // Symmetrize: the rule is even, so average mirrored entries.
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

const GaussRule& cached_gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<const GaussRule>(gauss_legendre(order));
  return *slot;
}

}  // namespace szmk
