#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bergman/indexing.hpp"
#include "bergman/muntz.hpp"
#include "bergman/symbols.hpp"

namespace bergman {

enum class OmegaMethod { ClosedForm, Quadrature };

const char* to_string(OmegaMethod m);

struct OmegaValue {
  double value = 0.0;
  OmegaMethod method = OmegaMethod::ClosedForm;
};

/// omega(f, s): the eigenvalue of T_f on the degree-s shell of A^2_alpha.
/// Closed forms exist for PowerT and PolyInT2 (Beta-function ratios; at
/// alpha = 0, (n+s)/(n+s+a) for t^{2a}); other profiles use quadrature.
OmegaValue omega_eval(const RadialProfile& rho, double s, const SpaceParams& space);
double omega(const RadialProfile& rho, double s, const SpaceParams& space);

/// Closed-form path only; nullopt for Step and Sampled profiles.
std::optional<double> omega_closed_form(const RadialProfile& rho, double s, const SpaceParams& space);

/// omega(f, s) for s = 0..s_max.
struct OmegaSequence {
  RadialProfile profile;
  SpaceParams space;
  std::vector<double> values;
  OmegaMethod method = OmegaMethod::ClosedForm;

  int s_max() const { return static_cast<int>(values.size()) - 1; }
};

OmegaSequence omega_sequence(const RadialProfile& rho, const SpaceParams& space, int s_max);

/// W = {s <= s_max : |omega(f,s)| <= eps_zero}. `margin` is the smallest
/// |omega| over degrees kept out of W (infinite when every degree is in W).
struct DegreeZeroSet {
  std::vector<int> degrees;
  double eps_zero = 0.0;
  int s_max = 0;
  double margin = 0.0;
};

/// Two-band rule: |omega| <= eps is zero, |omega| >= 10 eps is nonzero, and
/// anything in between throws AmbiguousZero.
DegreeZeroSet degree_zero_set(const OmegaSequence& seq, double eps_zero);

/// Classifies sum 1/s over W \ {0}, optionally extended by a symbolic tail.
SumClass sparsity_verdict(const DegreeZeroSet& w, const std::optional<IntegerSetDesc>& tail = std::nullopt);

/// PolyInT2 profile of degree k = |zero_degrees| with leading coefficient 1
/// whose omega vanishes at each listed degree. Throws NumericalError when
/// the linear system is singular.
RadialProfile engineered_zero_profile(std::span<const int> zero_degrees, const SpaceParams& space);

}  // namespace bergman
