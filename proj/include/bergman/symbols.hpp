#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bergman/indexing.hpp"

namespace bergman {

using Complex = std::complex<double>;

/// f~(t) = sum_j a_j t^{2j}
struct PolyInT2 {
  std::vector<double> coeffs;
};

/// f~(t) = t^{2a}, a >= 0
struct PowerT {
  double exponent = 0.0;
};

/// Piecewise constant: value v_i on [t_{i-1}, t_i).
struct Step {
  std::vector<double> breaks;
  std::vector<double> values;
};

/// Monotone-cubic (PCHIP) interpolation of grid values, clamped outside
/// the grid.
struct Sampled {
  std::vector<double> grid;
  std::vector<double> values;
};

/// A bounded radial profile f~ on [0,1).
class RadialProfile {
 public:
  enum class Kind { PolyInT2 = 0, PowerT = 1, Step = 2, Sampled = 3 };

  static RadialProfile poly_t2(std::vector<double> coeffs);
  static RadialProfile power_t(double exponent);
  static RadialProfile step(std::vector<double> breaks, std::vector<double> values);
  static RadialProfile sampled(std::vector<double> grid, std::vector<double> values);
  static RadialProfile constant(double c) { return poly_t2({c}); }

  Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
  template <class T>
  const T* get_if() const noexcept { return std::get_if<T>(&data_); }

  /// Evaluates f~(t); throws DomainError outside [0,1).
  double operator()(double t) const;

  /// Rigorous upper bound for sup |f~| on [0,1).
  double sup_bound() const;

  /// Coefficients of f~(sqrt(u)) as a polynomial in u = t^2, when it is one
  /// (PolyInT2, or PowerT with an integer exponent).
  std::optional<std::vector<double>> u_polynomial() const;
  bool is_polynomial() const { return u_polynomial().has_value(); }
  /// Degree in u of the polynomial form; -1 for the zero polynomial.
  int u_degree() const;

  /// Interior discontinuity / knot locations in u = t^2, ascending.
  std::vector<double> u_breakpoints() const;

  RadialProfile scaled(double c) const;

  /// (kind, flattened parameters); equal keys mean structurally equal profiles.
  std::pair<int, std::vector<double>> key() const;
  bool operator==(const RadialProfile& o) const { return key() == o.key(); }
  bool operator<(const RadialProfile& o) const { return key() < o.key(); }

 private:
  using Data = std::variant<PolyInT2, PowerT, Step, Sampled>;
  explicit RadialProfile(Data d);

  Data data_;
  struct Interpolant;
  std::shared_ptr<const Interpolant> interp_;
};

double eval_radial(const RadialProfile& rho, double t);

/// coeff * z^p conj(z)^q * rho(|z|)
struct SymbolTerm {
  Complex coeff;
  MultiIndex p;
  MultiIndex q;
  RadialProfile rho;
};

/// Finite sum of monomial-times-radial terms on the ball. Always held in
/// canonical form: terms sharing (p, q, rho) are merged, zero coefficients
/// dropped, terms sorted.
class SymbolExpr {
 public:
  explicit SymbolExpr(int dim, std::vector<SymbolTerm> terms = {});

  static SymbolExpr zero(int dim) { return SymbolExpr(dim); }
  static SymbolExpr radial(int dim, RadialProfile rho, Complex c = 1.0);
  static SymbolExpr monomial(int dim, MultiIndex p, MultiIndex q, Complex c = 1.0);

  int dim() const noexcept { return dim_; }
  const std::vector<SymbolTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  bool is_radial() const;
  bool is_polynomial() const;
  /// sum |coeff| sup|rho| >= ||f||_inf
  double sup_bound() const;
  /// max over terms of max(|p|,|q|) + deg_u(rho); requires is_polynomial().
  int support_degree() const;

  SymbolExpr conj() const;
  SymbolExpr scaled(Complex c) const;
  SymbolExpr operator+(const SymbolExpr& other) const;

  bool operator==(const SymbolExpr& other) const;

 private:
  int dim_;
  std::vector<SymbolTerm> terms_;
};

Complex eval_symbol(const SymbolExpr& f, std::span<const Complex> z);

using MonomialPair = std::pair<MultiIndex, MultiIndex>;

/// Expands a polynomial symbol into sum u_{a,b} z^a conj(z)^b using
/// |z|^{2j} = (sum |z_i|^2)^j. Entries with |u| == 0 are omitted.
std::map<MonomialPair, Complex> expand_polynomial(const SymbolExpr& f);

struct SymbolZeroCertificate {
  enum class Verdict { ZeroFunction, NonzeroWitness };
  Verdict verdict = Verdict::ZeroFunction;
  std::vector<Complex> point;
  Complex value{};
  double tolerance = 0.0;
};

/// Polynomial symbols are decided through their expansion; other symbols
/// by deterministic sampling. A witness always satisfies |value| > tolerance.
SymbolZeroCertificate certify_zero(const SymbolExpr& f, double tolerance = 1e-12);

SymbolExpr parse_symbol(std::string_view json_text);
std::string serialize_symbol(const SymbolExpr& f);

}  // namespace bergman
