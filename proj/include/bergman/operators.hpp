#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

#include "bergman/indexing.hpp"
#include "bergman/symbols.hpp"

namespace bergman {

enum class AssemblyMethod { ClosedForm, Quadrature, Composed, Adjoint };

const char* to_string(AssemblyMethod m);

struct Provenance {
  std::string description;
  AssemblyMethod method = AssemblyMethod::ClosedForm;
};

/// The compression P_D T P_D onto monomials of degree <= D, stored densely.
/// Entry (k, m) is <T e_m, e_k>. `exact_entries` records that every entry
/// equals the corresponding entry of the untruncated operator without
/// truncation or quadrature error.
class TruncatedOperator {
 public:
  TruncatedOperator(std::shared_ptr<const BasisOrder> order, SpaceParams space, Eigen::MatrixXcd entries,
                    Provenance provenance, bool exact_entries);

  static TruncatedOperator identity(std::shared_ptr<const BasisOrder> order, SpaceParams space);
  /// diag(values[|m|]) over the basis, values indexed by degree.
  static TruncatedOperator diagonal_by_degree(std::shared_ptr<const BasisOrder> order, SpaceParams space,
                                              const std::vector<double>& values, Provenance provenance, bool exact);

  const BasisOrder& order() const noexcept { return *order_; }
  const std::shared_ptr<const BasisOrder>& order_ptr() const noexcept { return order_; }
  const SpaceParams& space() const noexcept { return space_; }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  bool exact_entries() const noexcept { return exact_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }

  /// Off-diagonal entries are all exactly zero.
  bool is_diagonal() const;

 private:
  std::shared_ptr<const BasisOrder> order_;
  SpaceParams space_;
  Eigen::MatrixXcd entries_;
  Provenance provenance_;
  bool exact_;
};

/// Entries from
///   <T_f e_m, e_k> = sum_terms coeff c_m c_k [m+p = k+q] ||z^{m+p}||^2 omega(rho, |m+p|),
/// so radial symbols produce exactly diagonal matrices.
TruncatedOperator assemble(const SymbolExpr& f, std::shared_ptr<const BasisOrder> order, const SpaceParams& space);

/// A * B. Exact when both factors are exact and one of them is diagonal:
/// a diagonal factor cannot pull in degrees beyond the cutoff.
TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator adjoint(const TruncatedOperator& a);
Eigen::VectorXcd apply(const TruncatedOperator& a, const Eigen::VectorXcd& v);
double frobenius_norm(const TruncatedOperator& a);
double max_abs_entry(const TruncatedOperator& a);
/// Largest singular value of the truncation; a lower bound for ||T||.
double spectral_norm(const TruncatedOperator& a);

}  // namespace bergman
