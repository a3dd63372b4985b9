#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bergman/muntz.hpp"
#include "bergman/operators.hpp"
#include "bergman/reconstruction.hpp"
#include "bergman/spectra.hpp"
#include "bergman/symbols.hpp"

namespace bergman {

/// T_{f_1} ... T_{f_N} T_f T_{g_1} ... T_{g_M} with radial flanks.
struct ExperimentConfig {
  SpaceParams space;
  std::vector<RadialProfile> flanks_left;   // f_1..f_N
  std::vector<RadialProfile> flanks_right;  // g_1..g_M
  SymbolExpr middle{1};
  int degree = 8;                           // truncation D
  double eps_zero = 1e-10;
  double sigma_min = kSigmaThreshold;       // reconstruction rank threshold
  int support = 2;                          // reconstruction support A
  std::optional<int> constraint_degree;     // defaults to D
  std::optional<IntegerSetDesc> w_tail;     // symbolic zero degrees beyond D
};

struct RecoveredMoment {
  MultiIndex m;
  MultiIndex k;
  Complex inner;   // <T_f e_m, e_k>
  Complex moment;  // int f z^m conj(z)^k dv
};

struct ExperimentReport {
  double product_max_abs = 0.0;
  std::optional<TruncatedOperator> product;
  std::vector<std::vector<int>> flank_zero_sets;  // left flanks first
  std::vector<int> W;
  SumClass sparsity = SumClass::Converges;
  std::vector<RecoveredMoment> recovered;
  std::vector<RecoveredMoment> violations;
  double max_abs_moment = 0.0;
  int constraint_degree = 0;
  std::optional<NullspaceCertificate> certificate;
  bool middle_in_class = false;
  /// "forced-zero", "violating-moment", "not-forced" or "outside-certified-class".
  std::string verdict;
  double elapsed_seconds = 0.0;
};

/// Per-degree eigenvalue product of a list of radial flanks, degrees
/// 0..degree. Factors are multiplied in ascending order of value, so the
/// result does not depend on the order of the flanks.
std::vector<double> flank_eigenvalues(const std::vector<RadialProfile>& flanks, const SpaceParams& space, int degree);

/// Throws ConfigError if some flank has no omega value >= 10 eps_zero up to
/// the truncation degree.
void certify_flanks(const ExperimentConfig& cfg);

/// Union of the flank zero-degree sets (AmbiguousZero propagates).
std::vector<int> combined_zero_set(const ExperimentConfig& cfg, std::vector<std::vector<int>>* per_flank = nullptr);

/// T_{f_1} ... T_{f_N} T_f T_{g_1} ... T_{g_M} truncated at cfg.degree. The
/// flanks enter as two diagonal factors, so the product is exact.
TruncatedOperator assemble_product(const ExperimentConfig& cfg);

/// Assembles the truncated product, recovers <T_f e_m, e_k> for
/// |m|,|k| not in W by dividing out the flank eigenvalues, checks that the
/// recovered moments vanish and, if they do, runs the reconstruction
/// certificate over support degree A.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct NearZeroReport {
  double minimum = 0.0;  // smallest singular value of the coefficient-to-product map
  double product_max_abs = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> W;
  std::vector<std::pair<MonomialPair, double>> minimizer;
};

/// Rows: product entries (k, m) over the truncated basis. Columns: middle
/// coefficients u_{a,b}, |a|,|b| <= support.
Eigen::MatrixXd moment_map(const ExperimentConfig& cfg, int support, std::vector<MonomialPair>* columns = nullptr);

/// Minimizes the Frobenius norm of the truncated product over unit-norm
/// middle coefficient vectors. Throws BudgetExceeded when rows * cols > budget.
NearZeroReport near_zero_search(const ExperimentConfig& cfg, int support, std::size_t budget = 4'000'000);

}  // namespace bergman
