#include "bergman/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/gauss_jacobi.hpp"

namespace bergman {

namespace {

constexpr double kAdaptiveTarget = 1e-12;
constexpr std::size_t kMaxRefinements = 15;
constexpr double kRelativeTolerance = 1e-15;
const double kBelowOne = std::nextafter(1.0, 0.0);

RadialIntegral gauss_path(const RadialProfile& rho, double s, const SpaceParams& space) {
  auto poly = rho.u_polynomial();
  if (!poly) throw ConfigError("Gauss radial path requires a polynomial profile");
  const double beta = space.dim + s - 1.0;
  const auto& rule = gauss_jacobi_unit(nodes_for_degree(static_cast<int>(poly->size()) - 1), space.alpha, beta);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double p = 0.0;
    for (auto it = poly->rbegin(); it != poly->rend(); ++it) p = p * rule.nodes[i] + *it;
    num += rule.weights[i] * p;
    den += rule.weights[i];
  }
  return {num / den, RadialMethod::Gauss, 0.0};
}

RadialIntegral adaptive_path(const RadialProfile& rho, double s, const SpaceParams& space) {
  const double beta = space.dim + s - 1.0;
  const double alpha = space.alpha;

  std::vector<double> cuts{0.0};
  for (double b : rho.u_breakpoints()) {
    if (b > cuts.back() && b < 1.0) cuts.push_back(b);
  }
  cuts.push_back(1.0);

  // Double-exponential rule per smooth piece; the (1-u)^alpha endpoint
  // singularity is evaluated through the complement argument so that
  // 1 - u keeps full relative precision next to u = 1.
  thread_local boost::math::quadrature::tanh_sinh<double> rule(kMaxRefinements);
  double num = 0.0, num_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    auto integrand = [&](double u, double uc) {
      const double one_minus_u = (hi == 1.0 && uc > 0.0) ? uc : 1.0 - u;
      // Nodes within an ulp of 1 round sqrt(u) up to 1, outside the profile's domain.
      const double t = std::min(std::sqrt(u), kBelowOne);
      return rho(t) * std::pow(u, beta) * std::pow(one_minus_u, alpha);
    };
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    num += rule.integrate(integrand, lo, hi, kRelativeTolerance, &err, &l1, &levels);
    num_err += err;
  }
  // The normalizer is the Beta function B(n+s, alpha+1).
  const double den = std::exp(std::lgamma(beta + 1.0) + std::lgamma(alpha + 1.0) - std::lgamma(beta + alpha + 2.0));
  const double value = num / den;
  const double estimate = num_err / den;
  if (!(estimate <= kAdaptiveTarget) || !std::isfinite(value)) {
    throw QuadratureError("adaptive radial quadrature did not reach 1e-12 (estimate " + std::to_string(estimate) + ")",
                          estimate);
  }
  return {value, RadialMethod::Adaptive, estimate};
}

}  // namespace

RadialIntegral radial_integral(const RadialProfile& rho, double s, const SpaceParams& space, RadialMethod method) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("radial_integral: s must be finite and >= 0");
  switch (method) {
    case RadialMethod::Gauss:
      return gauss_path(rho, s, space);
    case RadialMethod::Adaptive:
      return adaptive_path(rho, s, space);
    case RadialMethod::Auto:
      break;
  }
  return rho.is_polynomial() ? gauss_path(rho, s, space) : adaptive_path(rho, s, space);
}

// ---------------------------------------------------------------------------

BallRule::BallRule(int dim, std::vector<Complex> coords, std::vector<double> weights)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  if (coords_.size() != weights_.size() * static_cast<std::size_t>(dim_)) {
    throw ConfigError("BallRule: coordinate/weight size mismatch");
  }
}

namespace {

struct Circle {
  std::vector<Complex> phases;
  double weight;
};

Circle circle_rule(int k) {
  Circle c;
  c.weight = 1.0 / k;
  for (int j = 0; j < k; ++j) c.phases.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / k));
  return c;
}

std::vector<double> normalized(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += x;
  std::vector<double> out(w);
  for (double& x : out) x /= s;
  return out;
}

void require_angles(const SpaceParams& space, const std::vector<int>& angular) {
  if (static_cast<int>(angular.size()) != space.dim) throw ConfigError("one angular node count per coordinate required");
  for (int k : angular) {
    if (k < 1) throw ConfigError("angular node counts must be positive");
  }
}

}  // namespace

BallRule slicing_ball_rule(const SpaceParams& space, int radial_nodes, const std::vector<int>& angular_nodes) {
  require_angles(space, angular_nodes);
  const int n = space.dim;

  std::vector<Complex> coords;
  std::vector<double> weights;
  std::vector<Complex> current(static_cast<std::size_t>(n));

  // Layer i handles coordinate i inside a ball of dimension l = n - i.
  auto recurse = [&](auto&& self, int i, double scale, double w) -> void {
    if (i == n) {
      coords.insert(coords.end(), current.begin(), current.end());
      weights.push_back(w);
      return;
    }
    const int l = n - i;
    const auto& rule = gauss_jacobi_unit(radial_nodes, l - 1.0 + space.alpha, 0.0);
    const auto uw = normalized(rule.weights);
    const auto circle = circle_rule(angular_nodes[static_cast<std::size_t>(i)]);
    for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
      const double u = rule.nodes[a];
      const double radius = scale * std::sqrt(u);
      const double next_scale = scale * std::sqrt(1.0 - u);
      for (const auto& phase : circle.phases) {
        current[static_cast<std::size_t>(i)] = radius * phase;
        self(self, i + 1, next_scale, w * uw[a] * circle.weight);
      }
    }
  };
  recurse(recurse, 0, 1.0, 1.0);
  return BallRule(n, std::move(coords), std::move(weights));
}

BallRule polar_ball_rule(const SpaceParams& space, int radial_nodes, int simplex_nodes,
                         const std::vector<int>& angular_nodes) {
  require_angles(space, angular_nodes);
  const int n = space.dim;

  const auto& radial = gauss_jacobi_unit(radial_nodes, space.alpha, n - 1.0);
  const auto rw = normalized(radial.weights);

  // Stick-breaking coordinates: v_i ~ Beta(1, n-1-i) on the simplex.
  struct SimplexPoint {
    std::vector<double> x;
    double w;
  };
  std::vector<SimplexPoint> simplex;
  {
    std::vector<double> x(static_cast<std::size_t>(n));
    auto recurse = [&](auto&& self, int i, double remaining, double w) -> void {
      if (i == n - 1) {
        x[static_cast<std::size_t>(i)] = remaining;
        simplex.push_back({x, w});
        return;
      }
      const auto& rule = gauss_jacobi_unit(simplex_nodes, n - 2.0 - i, 0.0);
      const auto vw = normalized(rule.weights);
      for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
        x[static_cast<std::size_t>(i)] = remaining * rule.nodes[a];
        self(self, i + 1, remaining * (1.0 - rule.nodes[a]), w * vw[a]);
      }
    };
    recurse(recurse, 0, 1.0, 1.0);
  }

  std::vector<Circle> circles;
  for (int k : angular_nodes) circles.push_back(circle_rule(k));

  std::vector<Complex> coords;
  std::vector<double> weights;
  std::vector<Complex> current(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < radial.nodes.size(); ++r) {
    const double u = radial.nodes[r];
    for (const auto& sp : simplex) {
      auto recurse = [&](auto&& self, int i, double w) -> void {
        if (i == n) {
          coords.insert(coords.end(), current.begin(), current.end());
          weights.push_back(w);
          return;
        }
        const double modulus = std::sqrt(u * sp.x[static_cast<std::size_t>(i)]);
        const auto& circle = circles[static_cast<std::size_t>(i)];
        for (const auto& phase : circle.phases) {
          current[static_cast<std::size_t>(i)] = modulus * phase;
          self(self, i + 1, w * circle.weight);
        }
      };
      recurse(recurse, 0, rw[r] * sp.w);
    }
  }
  return BallRule(n, std::move(coords), std::move(weights));
}

RuleSizing size_rule(const SymbolExpr& f, const MultiIndex& m, const MultiIndex& k, int max_degree) {
  const int n = f.dim();
  if (m.dim() != n || k.dim() != n) throw ConfigError("monomial dimension does not match the symbol");
  RuleSizing sizing;
  sizing.angular_nodes.assign(static_cast<std::size_t>(n), 1);
  for (const auto& t : f.terms()) {
    if (!t.rho.is_polynomial()) {
      throw ExactnessError("ball quadrature is exact only for polynomial radial profiles");
    }
    const auto a = t.p + m;
    const auto b = t.q + k;
    const int deg = (a.degree() + b.degree() + 1) / 2 + std::max(t.rho.u_degree(), 0);
    sizing.u_degree = std::max(sizing.u_degree, deg);
    for (int i = 0; i < n; ++i) {
      auto& slot = sizing.angular_nodes[static_cast<std::size_t>(i)];
      slot = std::max(slot, a[i] + b[i] + 1);
    }
  }
  if (sizing.u_degree > max_degree) {
    throw ExactnessError("integrand degree " + std::to_string(sizing.u_degree) + " exceeds the exactness budget " +
                         std::to_string(max_degree));
  }
  sizing.radial_nodes = nodes_for_degree(sizing.u_degree);
  return sizing;
}

Complex integrate_with(const BallRule& rule, const SymbolExpr& f, const MultiIndex& m, const MultiIndex& k) {
  const int n = rule.dim();
  std::vector<std::pair<MultiIndex, MultiIndex>> exps;
  for (const auto& t : f.terms()) exps.emplace_back(t.p + m, t.q + k);

  Complex total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto z = rule.point(i);
    double r2 = 0.0;
    for (const auto& zi : z) r2 += std::norm(zi);
    const double r = std::sqrt(r2);
    Complex at_point = 0.0;
    for (std::size_t ti = 0; ti < exps.size(); ++ti) {
      const auto& term = f.terms()[ti];
      Complex mono = term.coeff;
      for (int c = 0; c < n; ++c) {
        const Complex zc = z[static_cast<std::size_t>(c)];
        for (int e = 0; e < exps[ti].first[c]; ++e) mono *= zc;
        for (int e = 0; e < exps[ti].second[c]; ++e) mono *= std::conj(zc);
      }
      at_point += mono * term.rho(r);
    }
    total += rule.weight(i) * at_point;
  }
  return total;
}

Complex ball_integral(const SymbolExpr& f, const MultiIndex& m, const MultiIndex& k, const SpaceParams& space,
                      int max_degree) {
  if (f.dim() != space.dim) throw ConfigError("symbol dimension does not match the space");
  if (f.empty()) return 0.0;
  const auto sizing = size_rule(f, m, k, max_degree);
  const auto rule = slicing_ball_rule(space, sizing.radial_nodes, sizing.angular_nodes);
  return integrate_with(rule, f, m, k);
}

SliceCheck slicing_check(const SymbolExpr& g, const SpaceParams& space, int max_degree) {
  if (space.dim < 2) throw ConfigError("slicing_check requires n >= 2");
  if (g.dim() != space.dim) throw ConfigError("symbol dimension does not match the space");
  const auto zero = MultiIndex::zero(space.dim);
  SliceCheck out;
  if (g.empty()) return out;
  const auto sizing = size_rule(g, zero, zero, max_degree);
  const auto polar = polar_ball_rule(space, sizing.radial_nodes, sizing.radial_nodes, sizing.angular_nodes);
  const auto sliced = slicing_ball_rule(space, sizing.radial_nodes, sizing.angular_nodes);
  out.lhs = integrate_with(polar, g, zero, zero);
  out.rhs = integrate_with(sliced, g, zero, zero);
  out.discrepancy = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace bergman
