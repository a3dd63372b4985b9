#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bergman {

/// Dimension n of the ball and the weight exponent alpha of the measure
/// c_alpha (1 - |z|^2)^alpha dv. alpha = 0 is normalized Lebesgue measure.
struct SpaceParams {
  int dim = 1;
  double alpha = 0.0;

  /// Validating constructor; throws ConfigError unless n >= 1 and alpha > -1.
  static SpaceParams make(int dim, double alpha = 0.0);

  bool operator==(const SpaceParams&) const = default;
};

/// A multi-index m = (m_1, ..., m_n) with non-negative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  static MultiIndex zero(int dim);
  /// The unit vector in coordinate i scaled by `power`.
  static MultiIndex unit(int dim, int i, int power = 1);

  int dim() const noexcept { return static_cast<int>(entries_.size()); }
  int degree() const noexcept { return degree_; }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return degree_ == 0; }

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise this - other, or nullopt when some entry would go negative.
  std::optional<MultiIndex> minus(const MultiIndex& other) const;

  /// "(1,0,2)"
  std::string label() const;

  bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }
  std::strong_ordering operator<=>(const MultiIndex& other) const {
    return entries_ <=> other.entries_;
  }

 private:
  std::vector<int> entries_;
  int degree_ = 0;
};

/// Graded-lexicographic enumeration of {m : |m| <= cutoff}. Degree shells
/// are contiguous; within a shell, (d,0,...,0) comes first.
class BasisOrder {
 public:
  BasisOrder(int dim, int cutoff);

  int dim() const noexcept { return dim_; }
  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return items_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<MultiIndex>& items() const noexcept { return items_; }

  std::optional<std::size_t> index_of(const MultiIndex& m) const;
  /// Index range [begin, end) of the degree-d shell.
  std::pair<std::size_t, std::size_t> shell(int d) const;

  bool operator==(const BasisOrder& o) const { return dim_ == o.dim_ && cutoff_ == o.cutoff_; }

 private:
  int dim_;
  int cutoff_;
  std::vector<MultiIndex> items_;
  std::vector<std::size_t> shell_start_;
  std::map<std::vector<int>, std::size_t> index_;
};

BasisOrder enumerate_basis(const SpaceParams& space, int cutoff);

/// All multi-indices of dimension n with total degree exactly d, in the
/// same order as within a BasisOrder shell.
std::vector<MultiIndex> degree_shell(int dim, int d);

/// Binomial coefficient as a double (exact for the sizes used here).
double binomial(int n, int k);

/// log of the sphere moment  int_S |zeta^m|^2 d sigma = (n-1)! m! / (n-1+|m|)!.
double log_sphere_moment(const MultiIndex& m);

/// log ||z^m||^2 in A^2_alpha. Closed form at alpha = 0, Gauss-Jacobi
/// radial quadrature otherwise.
double log_monomial_norm_sq(const MultiIndex& m, const SpaceParams& space);
double monomial_norm_sq(const MultiIndex& m, const SpaceParams& space);

/// c_m with e_m = c_m z^m orthonormal; c_m = ||z^m||^{-1}.
double basis_coefficient(const MultiIndex& m, const SpaceParams& space);

}  // namespace bergman
