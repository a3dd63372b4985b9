#pragma once

#include <vector>

namespace bergman {

/// Gauss rule on [0,1] for the weight u^beta (1-u)^alpha. With N nodes it
/// integrates polynomials of degree <= 2N-1 exactly; weights sum to the
/// weight's total mass B(beta+1, alpha+1).
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double alpha = 0.0;
  double beta = 0.0;
  int exactness = 0;

  double mass() const;
};

/// Cached; returned references stay valid for the life of the process.
const RadialRule& gauss_jacobi_unit(int num_nodes, double alpha, double beta);

/// Smallest node count whose rule is exact for degree `degree`.
inline int nodes_for_degree(int degree) { return degree < 0 ? 1 : degree / 2 + 1; }

}  // namespace bergman
