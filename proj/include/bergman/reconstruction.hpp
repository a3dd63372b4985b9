#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bergman/indexing.hpp"
#include "bergman/symbols.hpp"

namespace bergman {

/// int_B |z^a|^2 dv_alpha through the slicing recursion: peel z_1 off against
/// (1-|z_1|^2)^{l-1+|a~|+alpha} on the disk, recurse on the remaining
/// coordinates. Returned as a logarithm.
double log_sliced_moment(const MultiIndex& a, const SpaceParams& space);

/// One block of the moment system: all unknowns u_{a,b} with a - b = offset
/// and all constraint rows (m, k) with k - m = offset. Row (m,k), column
/// (a,b) holds int z^{a+m} conj(z)^{b+k} dv, which is nonzero only inside
/// a block.
struct ConstraintBlock {
  std::vector<int> offset;
  std::vector<MonomialPair> unknowns;     // (a, b)
  std::vector<MonomialPair> constraints;  // (m, k)
  Eigen::MatrixXd matrix;
};

struct MomentConstraintSystem {
  SpaceParams space;
  int support_degree = 0;
  std::vector<int> excluded;
  int constraint_degree = 0;
  std::vector<ConstraintBlock> blocks;

  std::size_t unknown_count() const;
  std::size_t constraint_count() const;
};

/// Unknowns: coefficients of f = sum u_{a,b} z^a conj(z)^b with |a|,|b| <= A.
/// Constraints: int f z^m conj(z)^k dv = 0 for |m|,|k| <= D_c, |m|,|k| not in W.
/// Throws SlackError when D_c < A + |W| + 1 or when some block has fewer
/// surviving rows than unknowns.
MomentConstraintSystem build_constraints(int support_degree, std::span<const int> excluded, int constraint_degree,
                                         const SpaceParams& space);

struct BlockCertificate {
  std::vector<int> offset;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double sigma_min = 0.0;
};

struct NullspaceCertificate {
  enum class Verdict { OnlyZero, Nontrivial };
  Verdict verdict = Verdict::OnlyZero;
  double sigma_min = 0.0;
  double threshold = 0.0;
  std::vector<BlockCertificate> blocks;
  /// Unit-norm coefficients (a, b, u_{a,b}) of a nullspace element.
  std::vector<std::pair<MonomialPair, double>> witness;
};

inline constexpr double kSigmaThreshold = 1e-10;
inline constexpr double kSigmaFloor = 1e-12;

/// Column-equilibrated SVD per block. OnlyZero when every block's smallest
/// singular value is >= threshold; Nontrivial (with a witness) when some
/// block falls below floor; Indeterminate is thrown in between. Requires
/// 0 < floor <= threshold.
NullspaceCertificate nullspace_certificate(const MomentConstraintSystem& sys, double threshold = kSigmaThreshold,
                                           double floor = kSigmaFloor);

inline constexpr double kMomentZero = 1e-11;

struct ConstrainedMoment {
  MultiIndex m;
  MultiIndex k;
  Complex value;
};

/// int f z^m conj(z)^k dv for every |m|,|k| <= D_c with |m|,|k| not in W,
/// evaluated term by term through omega.
std::vector<ConstrainedMoment> constrained_moments(const SymbolExpr& f, std::span<const int> excluded,
                                                   int constraint_degree, const SpaceParams& space);

struct AnnihilationReport {
  std::size_t moments_checked = 0;
  double max_abs_moment = 0.0;
  std::vector<ConstrainedMoment> violations;
  std::optional<NullspaceCertificate> certificate;
  /// "violating-moment", "forced-zero" or "not-forced".
  std::string verdict;
};

/// Checks the constrained moments of a polynomial symbol and, when they all
/// vanish (|moment| <= 1e-11), certifies that the support class of f admits
/// only the zero solution.
AnnihilationReport annihilation_test(const SymbolExpr& f, std::span<const int> excluded, int constraint_degree,
                                     const SpaceParams& space);

}  // namespace bergman
