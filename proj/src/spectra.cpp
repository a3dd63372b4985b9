#include "bergman/spectra.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

const char* to_string(OmegaMethod m) { return m == OmegaMethod::ClosedForm ? "closed-form" : "quadrature"; }

namespace {

// omega(t^{2a}, s) = B(n+s+a, alpha+1) / B(n+s, alpha+1).
double power_omega(double a, double s, const SpaceParams& space) {
  const double base = space.dim + s;
  if (a == 0.0) return 1.0;
  if (space.alpha == 0.0) return base / (base + a);
  if (a == std::floor(a) && a <= 256.0) {
    double r = 1.0;
    for (int i = 0; i < static_cast<int>(a); ++i) r *= (base + i) / (base + space.alpha + 1.0 + i);
    return r;
  }
  return std::exp(std::lgamma(base + a) + std::lgamma(base + space.alpha + 1.0) - std::lgamma(base) -
                  std::lgamma(base + a + space.alpha + 1.0));
}

}  // namespace

std::optional<double> omega_closed_form(const RadialProfile& rho, double s, const SpaceParams& space) {
  if (const auto* p = rho.get_if<PowerT>()) return power_omega(p->exponent, s, space);
  if (const auto* p = rho.get_if<PolyInT2>()) {
    double acc = 0.0;
    for (std::size_t j = 0; j < p->coeffs.size(); ++j) {
      if (p->coeffs[j] != 0.0) acc += p->coeffs[j] * power_omega(static_cast<double>(j), s, space);
    }
    return acc;
  }
  return std::nullopt;
}

OmegaValue omega_eval(const RadialProfile& rho, double s, const SpaceParams& space) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("omega: s must be finite and >= 0");
  if (auto v = omega_closed_form(rho, s, space)) return {*v, OmegaMethod::ClosedForm};
  return {radial_integral(rho, s, space).value, OmegaMethod::Quadrature};
}

double omega(const RadialProfile& rho, double s, const SpaceParams& space) { return omega_eval(rho, s, space).value; }

OmegaSequence omega_sequence(const RadialProfile& rho, const SpaceParams& space, int s_max) {
  if (s_max < 0) throw ConfigError("omega_sequence: s_max must be >= 0");
  OmegaSequence seq{rho, space, {}, OmegaMethod::ClosedForm};
  seq.values.reserve(static_cast<std::size_t>(s_max) + 1);
  for (int s = 0; s <= s_max; ++s) {
    const auto v = omega_eval(rho, s, space);
    seq.values.push_back(v.value);
    seq.method = v.method;
  }
  return seq;
}

DegreeZeroSet degree_zero_set(const OmegaSequence& seq, double eps_zero) {
  if (!(eps_zero > 0.0)) throw ConfigError("eps_zero must be > 0");
  DegreeZeroSet out;
  out.eps_zero = eps_zero;
  out.s_max = seq.s_max();
  out.margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= seq.s_max(); ++s) {
    const double mag = std::abs(seq.values[static_cast<std::size_t>(s)]);
    if (mag <= eps_zero) {
      out.degrees.push_back(s);
    } else if (mag < 10.0 * eps_zero) {
      throw AmbiguousZero("|omega(f," + std::to_string(s) + ")| = " + std::to_string(mag) +
                          " lies between eps_zero and 10*eps_zero");
    } else {
      out.margin = std::min(out.margin, mag);
    }
  }
  return out;
}

SumClass sparsity_verdict(const DegreeZeroSet& w, const std::optional<IntegerSetDesc>& tail) {
  std::vector<long long> elems(w.degrees.begin(), w.degrees.end());
  auto finite = IntegerSetDesc::finite(std::move(elems));
  if (!tail) return reciprocal_sum_class(finite);
  return reciprocal_sum_class(IntegerSetDesc::set_union({finite, *tail}));
}

RadialProfile engineered_zero_profile(std::span<const int> zero_degrees, const SpaceParams& space) {
  const auto k = static_cast<Eigen::Index>(zero_degrees.size());
  if (k == 0) return RadialProfile::constant(1.0);
  // Unknowns a_0..a_{k-1}; a_k = 1 is the normalization row.
  Eigen::MatrixXd a(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double s = zero_degrees[static_cast<std::size_t>(i)];
    if (s < 0) throw ConfigError("engineered zero degrees must be non-negative");
    for (Eigen::Index j = 0; j < k; ++j) a(i, j) = power_omega(static_cast<double>(j), s, space);
    rhs(i) = -power_omega(static_cast<double>(k), s, space);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (lu.rank() < k) throw NumericalError("engineered zero profile: singular system (repeated degrees?)");
  const Eigen::VectorXd sol = lu.solve(rhs);
  std::vector<double> coeffs(sol.data(), sol.data() + k);
  coeffs.push_back(1.0);
  return RadialProfile::poly_t2(std::move(coeffs));
}

}  // namespace bergman
