#include "bergman/reconstruction.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/spectra.hpp"

namespace bergman {

namespace {

double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

std::string offset_label(const std::vector<int>& d) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ')';
  return os.str();
}

std::vector<int> normalized_excluded(std::span<const int> excluded) {
  std::vector<int> w(excluded.begin(), excluded.end());
  for (int s : w) {
    if (s < 0) throw ConfigError("excluded degrees must be non-negative");
  }
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

bool is_excluded(const std::vector<int>& w, int degree) { return std::binary_search(w.begin(), w.end(), degree); }

}  // namespace

double log_sliced_moment(const MultiIndex& a, const SpaceParams& space) {
  if (a.dim() != space.dim) throw ConfigError("multi-index dimension does not match the space");
  const int n = space.dim;
  double acc = 0.0;
  int rest = a.degree();
  for (int i = 0; i < n; ++i) {
    const int l = n - i;
    rest -= a[i];
    // Layer: int_0^1 u^{a_i} (1-u)^{rest + l - 1 + alpha} du / int_0^1 (1-u)^{l - 1 + alpha} du
    acc += log_beta(a[i] + 1.0, rest + l + space.alpha) + std::log(l + space.alpha);
  }
  return acc;
}

std::size_t MomentConstraintSystem::unknown_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.unknowns.size();
  return n;
}

std::size_t MomentConstraintSystem::constraint_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.constraints.size();
  return n;
}

MomentConstraintSystem build_constraints(int support_degree, std::span<const int> excluded, int constraint_degree,
                                         const SpaceParams& space) {
  if (support_degree < 0) throw ConfigError("support degree must be >= 0");
  if (constraint_degree < 0) throw ConfigError("constraint degree must be >= 0");
  MomentConstraintSystem sys;
  sys.space = space;
  sys.support_degree = support_degree;
  sys.excluded = normalized_excluded(excluded);
  sys.constraint_degree = constraint_degree;

  const int required = support_degree + static_cast<int>(sys.excluded.size()) + 1;
  if (constraint_degree < required) {
    throw SlackError("constraint degree " + std::to_string(constraint_degree) + " is below the slack requirement A+|W|+1 = " +
                     std::to_string(required));
  }

  const int n = space.dim;
  const BasisOrder support(n, support_degree);
  const BasisOrder constraint_basis(n, constraint_degree);

  std::map<std::vector<int>, ConstraintBlock> blocks;
  for (const auto& a : support.items()) {
    for (const auto& b : support.items()) {
      std::vector<int> d(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = a[i] - b[i];
      auto& block = blocks[d];
      block.offset = d;
      block.unknowns.emplace_back(a, b);
    }
  }

  for (auto& [d, block] : blocks) {
    for (const auto& m : constraint_basis.items()) {
      if (is_excluded(sys.excluded, m.degree())) continue;
      std::vector<int> k(static_cast<std::size_t>(n));
      bool valid = true;
      for (int i = 0; i < n; ++i) {
        k[static_cast<std::size_t>(i)] = m[i] + d[static_cast<std::size_t>(i)];
        valid = valid && k[static_cast<std::size_t>(i)] >= 0;
      }
      if (!valid) continue;
      MultiIndex kk(std::move(k));
      if (kk.degree() > constraint_degree || is_excluded(sys.excluded, kk.degree())) continue;
      block.constraints.emplace_back(m, std::move(kk));
    }
    if (block.constraints.size() < block.unknowns.size()) {
      throw SlackError("diagonal " + offset_label(d) + " keeps " + std::to_string(block.constraints.size()) +
                       " constraint rows for " + std::to_string(block.unknowns.size()) +
                       " unknowns; raise the constraint degree");
    }
    block.matrix.resize(static_cast<Eigen::Index>(block.constraints.size()),
                        static_cast<Eigen::Index>(block.unknowns.size()));
    for (std::size_t r = 0; r < block.constraints.size(); ++r) {
      for (std::size_t c = 0; c < block.unknowns.size(); ++c) {
        const auto total = block.unknowns[c].first + block.constraints[r].first;
        block.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            std::exp(log_sliced_moment(total, space));
      }
    }
  }

  for (auto& [d, block] : blocks) sys.blocks.push_back(std::move(block));
  return sys;
}

NullspaceCertificate nullspace_certificate(const MomentConstraintSystem& sys, double threshold, double floor) {
  if (!(floor > 0.0) || !(threshold >= floor)) {
    throw ConfigError("nullspace_certificate: need 0 < floor <= threshold");
  }
  NullspaceCertificate cert;
  cert.threshold = threshold;
  cert.sigma_min = std::numeric_limits<double>::infinity();

  const ConstraintBlock* worst = nullptr;
  Eigen::VectorXd worst_vector;
  for (const auto& block : sys.blocks) {
    const Eigen::VectorXd norms = block.matrix.colwise().norm().transpose();
    Eigen::MatrixXd equilibrated = block.matrix;
    for (Eigen::Index c = 0; c < equilibrated.cols(); ++c) equilibrated.col(c) /= norms(c);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(equilibrated, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smin = equilibrated.rows() < equilibrated.cols() ? 0.0 : sv(sv.size() - 1);
    cert.blocks.push_back({block.offset, block.constraints.size(), block.unknowns.size(), smin});
    if (smin < cert.sigma_min) {
      cert.sigma_min = smin;
      worst = &block;
      worst_vector = svd.matrixV().col(svd.matrixV().cols() - 1).cwiseQuotient(norms);
    }
  }

  if (!worst || cert.sigma_min >= threshold) return cert;
  if (cert.sigma_min >= floor) {
    std::ostringstream os;
    os << "smallest equilibrated singular value " << cert.sigma_min << " on diagonal "
       << offset_label(worst->offset) << " lies in the indeterminate band; raise the constraint degree";
    throw Indeterminate(os.str());
  }
  cert.verdict = NullspaceCertificate::Verdict::Nontrivial;
  worst_vector.normalize();
  for (std::size_t c = 0; c < worst->unknowns.size(); ++c) {
    cert.witness.emplace_back(worst->unknowns[c], worst_vector(static_cast<Eigen::Index>(c)));
  }
  return cert;
}

std::vector<ConstrainedMoment> constrained_moments(const SymbolExpr& f, std::span<const int> excluded,
                                                   int constraint_degree, const SpaceParams& space) {
  if (f.dim() != space.dim) throw ConfigError("symbol dimension does not match the space");
  const auto w = normalized_excluded(excluded);
  const BasisOrder basis(space.dim, constraint_degree);

  std::map<std::pair<std::size_t, std::size_t>, Complex> acc;  // (index m, index k)
  for (std::size_t mi = 0; mi < basis.size(); ++mi) {
    const auto& m = basis[mi];
    if (is_excluded(w, m.degree())) continue;
    for (const auto& t : f.terms()) {
      const auto a = t.p + m;
      const auto k = a.minus(t.q);
      if (!k || k->degree() > constraint_degree || is_excluded(w, k->degree())) continue;
      const auto ki = *basis.index_of(*k);
      acc[{mi, ki}] += t.coeff * monomial_norm_sq(a, space) * omega(t.rho, a.degree(), space);
    }
  }

  std::vector<ConstrainedMoment> out;
  out.reserve(acc.size());
  for (const auto& [idx, v] : acc) out.push_back({basis[idx.first], basis[idx.second], v});
  return out;
}

AnnihilationReport annihilation_test(const SymbolExpr& f, std::span<const int> excluded, int constraint_degree,
                                     const SpaceParams& space) {
  if (!f.is_polynomial()) throw ConfigError("annihilation_test requires polynomial radial profiles");
  const auto w = normalized_excluded(excluded);
  AnnihilationReport report;

  std::size_t admissible = 0;
  for (int d = 0; d <= constraint_degree; ++d) {
    if (!is_excluded(w, d)) admissible += degree_shell(space.dim, d).size();
  }
  report.moments_checked = admissible * admissible;

  for (auto& mom : constrained_moments(f, w, constraint_degree, space)) {
    report.max_abs_moment = std::max(report.max_abs_moment, std::abs(mom.value));
    if (std::abs(mom.value) > kMomentZero) report.violations.push_back(std::move(mom));
  }
  if (!report.violations.empty()) {
    report.verdict = "violating-moment";
    return report;
  }

  const int support = f.empty() ? 0 : f.support_degree();
  report.certificate = nullspace_certificate(build_constraints(support, w, constraint_degree, space));
  report.verdict =
      report.certificate->verdict == NullspaceCertificate::Verdict::OnlyZero ? "forced-zero" : "not-forced";
  return report;
}

}  // namespace bergman
