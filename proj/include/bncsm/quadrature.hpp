#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bncsm {

struct QuadratureRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

/// n-point generalized Gauss-Laguerre rule for the weight y^a e^{-y} on
/// (0, inf), a > -1, by Golub-Welsch: the nodes are the eigenvalues of the
/// Jacobi matrix of the monic Laguerre recurrence (diagonal 2k + a + 1,
/// off-diagonal sqrt(k (k + a))) and the weights are Gamma(a + 1) times the
/// squared first components of the normalized eigenvectors.
inline QuadratureRule gauss_laguerre(int n, long double a) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: need at least one node");
  if (!(a > -1.0L)) throw std::invalid_argument("gauss_laguerre: exponent must exceed -1");
  using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix jacobi = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2.0L * k + a + 1.0L;
    if (k + 1 < n) {
      const long double off = std::sqrt((k + 1.0L) * (k + 1.0L + a));
      jacobi(k, k + 1) = off;
      jacobi(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_laguerre: eigen-decomposition failed");
  }
  const long double mass = std::tgamma(a + 1.0L);
  QuadratureRule rule;
  for (int k = 0; k < n; ++k) {
    const long double v = solver.eigenvectors()(0, k);
    rule.nodes.push_back(solver.eigenvalues()(k));
    rule.weights.push_back(mass * v * v);
  }
  return rule;
}

}  // namespace bncsm
