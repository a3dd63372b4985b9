#include "bergman/harness.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

std::vector<double> flank_eigenvalues(const std::vector<RadialProfile>& flanks, const SpaceParams& space, int degree) {
  std::vector<std::vector<double>> seqs;
  for (const auto& f : flanks) seqs.push_back(omega_sequence(f, space, degree).values);
  std::vector<double> out(static_cast<std::size_t>(degree) + 1, 1.0);
  std::vector<double> factors;
  for (std::size_t s = 0; s < out.size(); ++s) {
    factors.clear();
    for (const auto& seq : seqs) factors.push_back(seq[s]);
    std::sort(factors.begin(), factors.end());
    double p = 1.0;
    for (double x : factors) p *= x;
    out[s] = p;
  }
  return out;
}

void certify_flanks(const ExperimentConfig& cfg) {
  auto check = [&](const std::vector<RadialProfile>& flanks, const char* side) {
    for (std::size_t i = 0; i < flanks.size(); ++i) {
      const auto seq = omega_sequence(flanks[i], cfg.space, cfg.degree);
      const bool witnessed = std::any_of(seq.values.begin(), seq.values.end(),
                                         [&](double v) { return std::abs(v) >= 10.0 * cfg.eps_zero; });
      if (!witnessed) {
        throw ConfigError(std::string(side) + " flank " + std::to_string(i) +
                          " has no omega value >= 10*eps_zero up to the truncation degree");
      }
    }
  };
  check(cfg.flanks_left, "left");
  check(cfg.flanks_right, "right");
}

std::vector<int> combined_zero_set(const ExperimentConfig& cfg, std::vector<std::vector<int>>* per_flank) {
  std::vector<int> all;
  auto collect = [&](const std::vector<RadialProfile>& flanks) {
    for (const auto& f : flanks) {
      const auto w = degree_zero_set(omega_sequence(f, cfg.space, cfg.degree), cfg.eps_zero);
      if (per_flank) per_flank->push_back(w.degrees);
      all.insert(all.end(), w.degrees.begin(), w.degrees.end());
    }
  };
  collect(cfg.flanks_left);
  collect(cfg.flanks_right);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

namespace {

void validate(const ExperimentConfig& cfg) {
  if (cfg.degree < 0) throw ConfigError("truncation degree must be >= 0");
  if (cfg.support < 0) throw ConfigError("support degree must be >= 0");
  if (!(cfg.eps_zero > 0.0)) throw ConfigError("eps_zero must be > 0");
  if (!(cfg.sigma_min > 0.0)) throw ConfigError("sigma_min must be > 0");
  if (cfg.middle.dim() != cfg.space.dim) throw ConfigError("middle symbol dimension does not match the space");
  if (cfg.constraint_degree && *cfg.constraint_degree > cfg.degree) {
    throw ConfigError("constraint degree cannot exceed the truncation degree");
  }
}

bool in_set(const std::vector<int>& w, int d) { return std::binary_search(w.begin(), w.end(), d); }

}  // namespace

TruncatedOperator assemble_product(const ExperimentConfig& cfg) {
  validate(cfg);
  auto order = std::make_shared<const BasisOrder>(enumerate_basis(cfg.space, cfg.degree));
  const auto left = flank_eigenvalues(cfg.flanks_left, cfg.space, cfg.degree);
  const auto right = flank_eigenvalues(cfg.flanks_right, cfg.space, cfg.degree);
  const auto left_op =
      TruncatedOperator::diagonal_by_degree(order, cfg.space, left, {"left flanks", AssemblyMethod::ClosedForm}, true);
  const auto right_op =
      TruncatedOperator::diagonal_by_degree(order, cfg.space, right, {"right flanks", AssemblyMethod::ClosedForm}, true);
  return compose(compose(left_op, assemble(cfg.middle, order, cfg.space)), right_op);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  validate(cfg);
  certify_flanks(cfg);

  ExperimentReport report;
  report.W = combined_zero_set(cfg, &report.flank_zero_sets);
  {
    DegreeZeroSet w;
    w.degrees = report.W;
    report.sparsity = sparsity_verdict(w, cfg.w_tail);
  }

  report.product = assemble_product(cfg);
  const auto& order = report.product->order_ptr();
  const auto left = flank_eigenvalues(cfg.flanks_left, cfg.space, cfg.degree);
  const auto right = flank_eigenvalues(cfg.flanks_right, cfg.space, cfg.degree);
  report.product_max_abs = max_abs_entry(*report.product);

  // <f e_m, e_k> = P(k,m) / (c_m conj(d_k)), c_m, d_k the flank eigenvalue products.
  const auto& p = report.product->entries();
  for (std::size_t col = 0; col < order->size(); ++col) {
    const auto& m = (*order)[col];
    if (in_set(report.W, m.degree())) continue;
    for (std::size_t row = 0; row < order->size(); ++row) {
      const auto& k = (*order)[row];
      if (in_set(report.W, k.degree())) continue;
      const Complex inner = p(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) /
                            (right[static_cast<std::size_t>(m.degree())] * left[static_cast<std::size_t>(k.degree())]);
      const Complex moment = inner / (basis_coefficient(m, cfg.space) * basis_coefficient(k, cfg.space));
      RecoveredMoment rm{m, k, inner, moment};
      report.max_abs_moment = std::max(report.max_abs_moment, std::abs(moment));
      if (std::abs(moment) > kMomentZero) report.violations.push_back(rm);
      report.recovered.push_back(std::move(rm));
    }
  }

  report.constraint_degree = cfg.constraint_degree.value_or(cfg.degree);
  report.middle_in_class = cfg.middle.is_polynomial() && (cfg.middle.empty() || cfg.middle.support_degree() <= cfg.support);

  if (!report.violations.empty()) {
    report.verdict = "violating-moment";
  } else {
    report.certificate =
        nullspace_certificate(build_constraints(cfg.support, report.W, report.constraint_degree, cfg.space),
                              cfg.sigma_min, cfg.sigma_min * (kSigmaFloor / kSigmaThreshold));
    if (!report.middle_in_class) {
      report.verdict = "outside-certified-class";
    } else if (report.certificate->verdict == NullspaceCertificate::Verdict::OnlyZero) {
      report.verdict = "forced-zero";
    } else {
      report.verdict = "not-forced";
    }
  }

  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Eigen::MatrixXd moment_map(const ExperimentConfig& cfg, int support, std::vector<MonomialPair>* columns) {
  if (support < 0) throw ConfigError("support degree must be >= 0");
  const BasisOrder order(cfg.space.dim, cfg.degree);
  const BasisOrder support_basis(cfg.space.dim, support);
  const auto left = flank_eigenvalues(cfg.flanks_left, cfg.space, cfg.degree);
  const auto right = flank_eigenvalues(cfg.flanks_right, cfg.space, cfg.degree);

  std::vector<MonomialPair> cols;
  for (const auto& a : support_basis.items()) {
    for (const auto& b : support_basis.items()) cols.emplace_back(a, b);
  }

  const auto size = static_cast<Eigen::Index>(order.size());
  Eigen::MatrixXd map = Eigen::MatrixXd::Zero(size * size, static_cast<Eigen::Index>(cols.size()));
  std::vector<double> coeff(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) coeff[i] = basis_coefficient(order[i], cfg.space);

  // Row index col * size + row flattens the product matrix column-major.
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& [a, b] = cols[c];
    for (std::size_t mi = 0; mi < order.size(); ++mi) {
      const auto& m = order[mi];
      const auto total = a + m;
      const auto k = total.minus(b);
      if (!k || k->degree() > cfg.degree) continue;
      const auto ki = *order.index_of(*k);
      const double value = left[static_cast<std::size_t>(k->degree())] * right[static_cast<std::size_t>(m.degree())] *
                           coeff[mi] * coeff[ki] * monomial_norm_sq(total, cfg.space);
      map(static_cast<Eigen::Index>(mi) * size + static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(c)) = value;
    }
  }
  if (columns) *columns = std::move(cols);
  return map;
}

NearZeroReport near_zero_search(const ExperimentConfig& cfg, int support, std::size_t budget) {
  if (cfg.degree < 0) throw ConfigError("truncation degree must be >= 0");
  certify_flanks(cfg);
  const double size = binomial(cfg.space.dim + cfg.degree, cfg.space.dim);
  const double unknowns = std::pow(binomial(cfg.space.dim + support, cfg.space.dim), 2.0);
  if (size * size * unknowns > static_cast<double>(budget)) {
    throw BudgetExceeded("near_zero_search: map of " + std::to_string(static_cast<long long>(size * size)) + " x " +
                         std::to_string(static_cast<long long>(unknowns)) + " exceeds the budget of " +
                         std::to_string(budget) + " entries");
  }

  NearZeroReport report;
  report.W = combined_zero_set(cfg);
  std::vector<MonomialPair> cols;
  const Eigen::MatrixXd map = moment_map(cfg, support, &cols);
  report.rows = static_cast<std::size_t>(map.rows());
  report.cols = static_cast<std::size_t>(map.cols());

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  report.minimum = map.rows() < map.cols() ? 0.0 : sv(sv.size() - 1);
  const Eigen::VectorXd v = svd.matrixV().col(svd.matrixV().cols() - 1);
  report.product_max_abs = (map * v).cwiseAbs().maxCoeff();
  for (std::size_t c = 0; c < cols.size(); ++c) report.minimizer.emplace_back(cols[c], v(static_cast<Eigen::Index>(c)));
  return report;
}

}  // namespace bergman
