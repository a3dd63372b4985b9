#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bergman/indexing.hpp"
#include "bergman/symbols.hpp"

namespace bergman {

enum class RadialMethod { Auto, Gauss, Adaptive };

struct RadialIntegral {
  double value = 0.0;
  RadialMethod method = RadialMethod::Auto;
  /// Estimated absolute error; 0 for the Gauss path (exact by degree).
  double error_estimate = 0.0;
};

/// Normalized radial moment
///   int_0^1 rho(sqrt u) u^{n+s-1} (1-u)^alpha du / int_0^1 u^{n+s-1} (1-u)^alpha du,
/// which at alpha = 0 equals 2(n+s) int_0^1 t^{2(n+s)-1} rho(t) dt.
///
/// The Gauss path absorbs u^{n+s-1} (1-u)^alpha into a Gauss-Jacobi weight,
/// so polynomial profiles are integrated exactly for any real s >= 0. The
/// adaptive path runs tanh-sinh quadrature on each piece between the
/// profile's breakpoints against the exact Beta normalizer, and throws
/// QuadratureError when the error estimate stays above 1e-12.
RadialIntegral radial_integral(const RadialProfile& rho, double s, const SpaceParams& space,
                               RadialMethod method = RadialMethod::Auto);

/// Tensor cubature on the weighted ball: points stored point-major, weights
/// summing to 1.
class BallRule {
 public:
  BallRule(int dim, std::vector<Complex> coords, std::vector<double> weights);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const Complex> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  double weight(std::size_t i) const { return weights_[i]; }

 private:
  int dim_;
  std::vector<Complex> coords_;
  std::vector<double> weights_;
};

/// Nested-disk rule following z = (z_1, sqrt(1-|z_1|^2) w): each layer of
/// dimension l integrates u = |z_1|^2 against (1-u)^{l-1+alpha} and the
/// angle of z_1 with an equispaced rule. `angular_nodes[i]` is the angle
/// count for coordinate i.
BallRule slicing_ball_rule(const SpaceParams& space, int radial_nodes, const std::vector<int>& angular_nodes);

/// Polar rule: u = |z|^2 against u^{n-1}(1-u)^alpha, (|z_i|^2/|z|^2) uniform
/// on the simplex via collapsed Gauss-Jacobi coordinates, and one equispaced
/// angle per coordinate. Independent of the slicing recursion.
BallRule polar_ball_rule(const SpaceParams& space, int radial_nodes, int simplex_nodes,
                         const std::vector<int>& angular_nodes);

/// Rule sizes that make sum_w f z^m conj(z)^k exact.
struct RuleSizing {
  int u_degree = 0;
  int radial_nodes = 1;
  std::vector<int> angular_nodes;
};

inline constexpr int kDefaultExactness = 64;

/// Throws ExactnessError for non-polynomial profiles or when the required
/// degree exceeds `max_degree`.
RuleSizing size_rule(const SymbolExpr& f, const MultiIndex& m, const MultiIndex& k, int max_degree);

/// sum_i w_i f(z_i) z_i^m conj(z_i)^k in a fixed order.
Complex integrate_with(const BallRule& rule, const SymbolExpr& f, const MultiIndex& m, const MultiIndex& k);

/// int_B f(z) z^m conj(z)^k dv_alpha, brute force over the slicing rule.
Complex ball_integral(const SymbolExpr& f, const MultiIndex& m, const MultiIndex& k, const SpaceParams& space,
                      int max_degree = kDefaultExactness);

struct SliceCheck {
  Complex lhs;
  Complex rhs;
  double discrepancy = 0.0;
};

/// lhs: polar rule over B_n. rhs: the slicing recursion
/// n int_{B_1} int_{B_{n-1}} g(z_1, sqrt(1-|z_1|^2) w)(1-|z_1|^2)^{n-1} dv_{n-1} dv_1.
SliceCheck slicing_check(const SymbolExpr& g, const SpaceParams& space, int max_degree = kDefaultExactness);

}  // namespace bergman
