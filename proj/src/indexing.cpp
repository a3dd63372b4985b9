#include "bergman/indexing.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/gauss_jacobi.hpp"

namespace bergman {

SpaceParams SpaceParams::make(int dim, double alpha) {
  if (dim < 1) throw ConfigError("dimension must be >= 1, got " + std::to_string(dim));
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw ConfigError("weight alpha must be finite and > -1");
  }
  return SpaceParams{dim, alpha};
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw ConfigError("multi-index entries must be non-negative");
    degree_ += e;
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zero(int dim) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0)); }

MultiIndex MultiIndex::unit(int dim, int i, int power) {
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e.at(static_cast<std::size_t>(i)) = power;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dim() != dim()) throw ConfigError("multi-index dimension mismatch");
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.entries_[i];
  return MultiIndex(std::move(e));
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& other) const {
  if (other.dim() != dim()) throw ConfigError("multi-index dimension mismatch");
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] -= other.entries_[i];
    if (e[i] < 0) return std::nullopt;
  }
  return MultiIndex(std::move(e));
}

std::string MultiIndex::label() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

namespace {

// Lex-descending compositions of d into `dim` parts.
void compositions(int dim, int d, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == dim - 1) {
    prefix.push_back(d);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = d; first >= 0; --first) {
    prefix.push_back(first);
    compositions(dim, d - first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> degree_shell(int dim, int d) {
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(dim));
  compositions(dim, d, prefix, out);
  return out;
}

BasisOrder::BasisOrder(int dim, int cutoff) : dim_(dim), cutoff_(cutoff) {
  if (dim < 1) throw ConfigError("basis dimension must be >= 1");
  if (cutoff < 0) throw ConfigError("degree cutoff must be >= 0");
  for (int d = 0; d <= cutoff; ++d) {
    shell_start_.push_back(items_.size());
    auto shell_items = degree_shell(dim, d);
    for (auto& m : shell_items) {
      index_.emplace(m.entries(), items_.size());
      items_.push_back(std::move(m));
    }
  }
  shell_start_.push_back(items_.size());
}

std::optional<std::size_t> BasisOrder::index_of(const MultiIndex& m) const {
  auto it = index_.find(m.entries());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::size_t, std::size_t> BasisOrder::shell(int d) const {
  if (d < 0 || d > cutoff_) return {items_.size(), items_.size()};
  return {shell_start_[static_cast<std::size_t>(d)], shell_start_[static_cast<std::size_t>(d) + 1]};
}

BasisOrder enumerate_basis(const SpaceParams& space, int cutoff) { return BasisOrder(space.dim, cutoff); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double log_sphere_moment(const MultiIndex& m) {
  const int n = m.dim();
  double acc = std::lgamma(static_cast<double>(n)) - std::lgamma(static_cast<double>(n + m.degree()));
  for (int e : m.entries()) acc += std::lgamma(e + 1.0);
  return acc;
}

double log_monomial_norm_sq(const MultiIndex& m, const SpaceParams& space) {
  if (m.dim() != space.dim) throw ConfigError("multi-index dimension does not match the space");
  const int n = space.dim;
  if (space.alpha == 0.0) {
    double acc = std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(n + m.degree()) + 1.0);
    for (int e : m.entries()) acc += std::lgamma(e + 1.0);
    return acc;
  }
  // Radial factor: int u^{|m|} u^{n-1} (1-u)^alpha du / int u^{n-1} (1-u)^alpha du.
  const auto& rule = gauss_jacobi_unit(nodes_for_degree(m.degree()), space.alpha, n - 1.0);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    num += rule.weights[i] * std::pow(rule.nodes[i], m.degree());
    den += rule.weights[i];
  }
  return log_sphere_moment(m) + std::log(num) - std::log(den);
}

double monomial_norm_sq(const MultiIndex& m, const SpaceParams& space) {
  return std::exp(log_monomial_norm_sq(m, space));
}

double basis_coefficient(const MultiIndex& m, const SpaceParams& space) {
  return std::exp(-0.5 * log_monomial_norm_sq(m, space));
}

}  // namespace bergman
