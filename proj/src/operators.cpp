#include "bergman/operators.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <map>

#include "bergman/errors.hpp"
#include "bergman/spectra.hpp"

namespace bergman {

const char* to_string(AssemblyMethod m) {
  switch (m) {
    case AssemblyMethod::ClosedForm:
      return "closed-form";
    case AssemblyMethod::Quadrature:
      return "quadrature";
    case AssemblyMethod::Composed:
      return "composed";
    case AssemblyMethod::Adjoint:
      return "adjoint";
  }
  return "unknown";
}

TruncatedOperator::TruncatedOperator(std::shared_ptr<const BasisOrder> order, SpaceParams space,
                                     Eigen::MatrixXcd entries, Provenance provenance, bool exact_entries)
    : order_(std::move(order)),
      space_(space),
      entries_(std::move(entries)),
      provenance_(std::move(provenance)),
      exact_(exact_entries) {
  if (!order_) throw ConfigError("TruncatedOperator requires a basis order");
  const auto n = static_cast<Eigen::Index>(order_->size());
  if (entries_.rows() != n || entries_.cols() != n) throw ConfigError("TruncatedOperator: matrix size mismatch");
  if (order_->dim() != space_.dim) throw ConfigError("TruncatedOperator: basis and space dimensions differ");
}

TruncatedOperator TruncatedOperator::identity(std::shared_ptr<const BasisOrder> order, SpaceParams space) {
  const auto n = static_cast<Eigen::Index>(order->size());
  return TruncatedOperator(std::move(order), space, Eigen::MatrixXcd::Identity(n, n), {"identity", AssemblyMethod::ClosedForm},
                           true);
}

TruncatedOperator TruncatedOperator::diagonal_by_degree(std::shared_ptr<const BasisOrder> order, SpaceParams space,
                                                        const std::vector<double>& values, Provenance provenance,
                                                        bool exact) {
  if (static_cast<int>(values.size()) <= order->cutoff()) throw ConfigError("diagonal_by_degree: too few degree values");
  const auto n = static_cast<Eigen::Index>(order->size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = values[static_cast<std::size_t>((*order)[static_cast<std::size_t>(i)].degree())];
  }
  return TruncatedOperator(std::move(order), space, std::move(m), std::move(provenance), exact);
}

bool TruncatedOperator::is_diagonal() const {
  for (Eigen::Index c = 0; c < entries_.cols(); ++c) {
    for (Eigen::Index r = 0; r < entries_.rows(); ++r) {
      if (r != c && entries_(r, c) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

namespace {

struct NormCache {
  const SpaceParams& space;
  std::map<std::vector<int>, double> logs;

  double log_norm_sq(const MultiIndex& m) {
    auto it = logs.find(m.entries());
    if (it != logs.end()) return it->second;
    const double v = log_monomial_norm_sq(m, space);
    logs.emplace(m.entries(), v);
    return v;
  }
};

}  // namespace

TruncatedOperator assemble(const SymbolExpr& f, std::shared_ptr<const BasisOrder> order, const SpaceParams& space) {
  if (!order) throw ConfigError("assemble: missing basis order");
  if (f.dim() != space.dim || order->dim() != space.dim) throw ConfigError("assemble: dimension mismatch");

  const auto n = static_cast<Eigen::Index>(order->size());
  const int cutoff = order->cutoff();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n, n);
  NormCache norms{space, {}};
  bool exact = true;
  bool quadrature = false;

  for (const auto& term : f.terms()) {
    exact = exact && (term.rho.is_polynomial() || term.rho.get_if<PowerT>() != nullptr);
    // omega values by degree |m+p|, evaluated lazily.
    std::map<int, double> omega_by_degree;
    for (Eigen::Index col = 0; col < n; ++col) {
      const auto& m = (*order)[static_cast<std::size_t>(col)];
      const auto a = m + term.p;
      const auto k = a.minus(term.q);
      if (!k || k->degree() > cutoff) continue;
      const auto row = order->index_of(*k);
      if (!row) continue;

      auto it = omega_by_degree.find(a.degree());
      if (it == omega_by_degree.end()) {
        const auto ov = omega_eval(term.rho, a.degree(), space);
        quadrature = quadrature || ov.method == OmegaMethod::Quadrature;
        it = omega_by_degree.emplace(a.degree(), ov.value).first;
      }
      // c_m c_k ||z^a||^2 in log space; exactly 1 when m = k = a.
      const double scale =
          std::exp(norms.log_norm_sq(a) - 0.5 * (norms.log_norm_sq(m) + norms.log_norm_sq(*k)));
      mat(static_cast<Eigen::Index>(*row), col) += term.coeff * scale * it->second;
    }
  }

  return TruncatedOperator(std::move(order), space, std::move(mat),
                           {serialize_symbol(f), quadrature ? AssemblyMethod::Quadrature : AssemblyMethod::ClosedForm},
                           exact);
}

namespace {

void require_compatible(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (!(a.order() == b.order()) || !(a.space() == b.space())) {
    throw ConfigError("operator basis orders or spaces do not match");
  }
}

}  // namespace

TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_compatible(a, b);
  const bool exact = a.exact_entries() && b.exact_entries() && (a.is_diagonal() || b.is_diagonal());
  Eigen::MatrixXcd product = a.entries() * b.entries();
  return TruncatedOperator(a.order_ptr(), a.space(), std::move(product),
                           {"(" + a.provenance().description + ")*(" + b.provenance().description + ")",
                            AssemblyMethod::Composed},
                           exact);
}

TruncatedOperator adjoint(const TruncatedOperator& a) {
  return TruncatedOperator(a.order_ptr(), a.space(), a.entries().adjoint(),
                           {"adjoint(" + a.provenance().description + ")", AssemblyMethod::Adjoint},
                           a.exact_entries());
}

Eigen::VectorXcd apply(const TruncatedOperator& a, const Eigen::VectorXcd& v) {
  if (v.size() != a.size()) throw ConfigError("apply: vector length does not match the basis");
  return a.entries() * v;
}

double frobenius_norm(const TruncatedOperator& a) { return a.entries().norm(); }

double max_abs_entry(const TruncatedOperator& a) {
  return a.size() == 0 ? 0.0 : a.entries().cwiseAbs().maxCoeff();
}

double spectral_norm(const TruncatedOperator& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.entries());
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace bergman
