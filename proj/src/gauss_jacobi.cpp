#include "bergman/gauss_jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// Golub-Welsch on the Jacobi matrix of the monic Jacobi polynomials,
// mapped from [-1,1] to [0,1]. In x-coordinates the weight is
// (1-x)^a (1+x)^b with a = alpha, b = beta. Solved in long double so the
// rounded nodes and weights carry full double accuracy.
RadialRule build_rule(int n, double a, double b) {
  if (n < 1) throw ConfigError("gauss_jacobi_unit: need at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw ConfigError("gauss_jacobi_unit: exponents must exceed -1");

  using Real = long double;
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  Vector diag(n);
  Vector sub(std::max(n - 1, 0));
  const Real la = a;
  const Real lb = b;
  const Real ab = la + lb;
  for (int k = 0; k < n; ++k) {
    Real alpha_k;
    if (k == 0) {
      alpha_k = (lb - la) / (ab + 2);
    } else {
      const Real t = 2 * k + ab;
      alpha_k = (lb * lb - la * la) / (t * (t + 2));
    }
    diag(k) = (1 + alpha_k) / 2;
  }
  for (int k = 1; k < n; ++k) {
    Real beta_k;
    const Real t = 2 * k + ab;
    if (k == 1) {
      // (1+a+b) cancels; keeps a+b = -1 well defined.
      beta_k = 4 * (1 + la) * (1 + lb) / ((2 + ab) * (2 + ab) * (3 + ab));
    } else {
      beta_k = 4 * k * (k + la) * (k + lb) * (k + ab) / (t * t * (t + 1) * (t - 1));
    }
    sub(k - 1) = std::sqrt(beta_k) / 2;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("gauss_jacobi_unit: eigensolver failed");

  const Real mass = std::exp(std::lgamma(la + 1) + std::lgamma(lb + 1) - std::lgamma(ab + 2));

  RadialRule rule;
  rule.alpha = a;
  rule.beta = b;
  rule.exactness = 2 * n - 1;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Real v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = std::clamp(static_cast<double>(solver.eigenvalues()(i)), 0.0, 1.0);
    rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(mass * v0 * v0);
  }
  return rule;
}

}  // namespace

double RadialRule::mass() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

const RadialRule& gauss_jacobi_unit(int num_nodes, double alpha, double beta) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<RadialRule>> cache;

  const auto key = std::make_tuple(num_nodes, alpha, beta);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<RadialRule>(build_rule(num_nodes, alpha, beta))).first;
  }
  return *it->second;
}

}  // namespace bergman
