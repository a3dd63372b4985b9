// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/harness.hpp"
#include "bergman/muntz.hpp"
#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/reconstruction.hpp"
#include "bergman/spectra.hpp"
#include "process.hpp"

using namespace bergman;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& failure) {
  if (!ok && o.ok) o.detail = failure;
  o.ok = o.ok && ok;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RadialProfile random_radial(std::mt19937_64& rng, int variant) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 0.9);
  switch (variant % 4) {
    case 0:
      return RadialProfile::poly_t2({c(rng), c(rng), c(rng), c(rng)});
    case 1:
      return RadialProfile::power_t(0.25 + 3.0 * pos(rng));
    case 2: {
      double b1 = pos(rng), b2 = pos(rng);
      if (b1 > b2) std::swap(b1, b2);
      if (b2 - b1 < 0.05) b2 = std::min(b1 + 0.05, 0.95);
      return RadialProfile::step({0.0, b1, b2, 1.0}, {c(rng), c(rng), c(rng)});
    }
    default:
      return RadialProfile::sampled({0.0, 0.25, 0.5, 0.75, 1.0}, {c(rng), c(rng), c(rng), c(rng), c(rng)});
  }
}

SymbolExpr random_polynomial_symbol(std::mt19937_64& rng, int n, int max_exp) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_int_distribution<int> e(0, max_exp);
  std::vector<SymbolTerm> terms;
  for (int i = 0; i < 3; ++i) {
    std::vector<int> p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
    for (auto& x : p) x = e(rng);
    for (auto& x : q) x = e(rng);
    terms.push_back(SymbolTerm{Complex(c(rng), c(rng)), MultiIndex(p), MultiIndex(q),
                               RadialProfile::poly_t2({c(rng), c(rng), c(rng)})});
  }
  return SymbolExpr(n, std::move(terms));
}

Outcome omega_paths() {
  Outcome o;
  double worst_exact = 0.0, worst_paths = 0.0;
  for (int a = 0; a <= 6; ++a) {
    const auto rho = RadialProfile::poly_t2([&] {
      std::vector<double> c(static_cast<std::size_t>(a) + 1, 0.0);
      c.back() = 1.0;
      return c;
    }());
    for (int n = 1; n <= 3; ++n) {
      for (int s = 0; s <= 40; ++s) {
        const auto s0 = SpaceParams::make(n);
        const double exact = (n + s) / static_cast<double>(n + s + a);
        for (auto method : {RadialMethod::Gauss, RadialMethod::Adaptive}) {
          worst_exact = std::max(worst_exact, std::abs(radial_integral(rho, s, s0, method).value - exact));
        }
        const auto s15 = SpaceParams::make(n, 1.5);
        worst_paths = std::max(worst_paths, std::abs(radial_integral(rho, s, s15, RadialMethod::Gauss).value -
                                                     radial_integral(rho, s, s15, RadialMethod::Adaptive).value));
      }
    }
  }
  note(o, worst_exact <= 1e-12, "alpha=0 error " + sci(worst_exact));
  note(o, worst_paths <= 1e-11, "alpha=1.5 path gap " + sci(worst_paths));
  o.detail = o.ok ? "max error " + sci(worst_exact) + ", path gap " + sci(worst_paths) : o.detail;
  return o;
}

Outcome diagonal_representation() {
  Outcome o;
  std::mt19937_64 rng(1001);
  double worst_off = 0.0, worst_diag = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const auto space = SpaceParams::make(n, trial % 7 == 0 ? 1.5 : 0.0);
    const auto rho = random_radial(rng, trial);
    const auto order = std::make_shared<const BasisOrder>(n, 10);
    const auto t = assemble(SymbolExpr::radial(n, rho), order, space);
    const auto seq = omega_sequence(rho, space, 10);
    const auto& e = t.entries();
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
      for (Eigen::Index r = 0; r < e.rows(); ++r) {
        if (r == c) {
          const double w = seq.values[static_cast<std::size_t>((*order)[static_cast<std::size_t>(r)].degree())];
          worst_diag = std::max(worst_diag, std::abs(e(r, c) - w));
        } else {
          worst_off = std::max(worst_off, std::abs(e(r, c)));
        }
      }
    }
  }
  note(o, worst_off == 0.0, "off-diagonal " + sci(worst_off));
  note(o, worst_diag <= 1e-12, "diagonal error " + sci(worst_diag));
  if (o.ok) o.detail = "off-diagonal 0, diagonal error " + sci(worst_diag);
  return o;
}

Outcome assembly_oracle() {
  Outcome o;
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    const int degree = n == 1 ? 6 : 5 + trial % 2 * 1;
    const auto space = SpaceParams::make(n, trial % 5 == 0 ? 1.5 : 0.0);
    const auto order = std::make_shared<const BasisOrder>(n, degree);
    const auto f = random_polynomial_symbol(rng, n, 2);
    const auto t = assemble(f, order, space);
    for (std::size_t c = 0; c < order->size(); ++c) {
      for (std::size_t r = 0; r < order->size(); ++r) {
        const auto& m = (*order)[c];
        const auto& k = (*order)[r];
        const Complex q = ball_integral(f, m, k, space) * basis_coefficient(m, space) * basis_coefficient(k, space);
        worst = std::max(worst, std::abs(q - t.entries()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
      }
    }
  }
  note(o, worst <= 1e-12, "max entry gap " + sci(worst));
  if (o.ok) o.detail = "max entry gap " + sci(worst);
  return o;
}

Outcome slicing_identity() {
  Outcome o;
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 2;
    const auto g = random_polynomial_symbol(rng, n, 2);
    worst = std::max(worst, slicing_check(g, SpaceParams::make(n, trial % 3 == 0 ? 1.5 : 0.0)).discrepancy);
  }
  note(o, worst <= 1e-12, "max discrepancy " + sci(worst));
  if (o.ok) o.detail = "max discrepancy " + sci(worst);
  return o;
}

Outcome muntz_paths() {
  Outcome o;
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> lam(0.1, 6.0);
  std::uniform_real_distribution<double> ex(0.0, 8.0);
  std::uniform_int_distribution<int> count(1, 8);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double lambda = lam(rng);
    std::vector<double> exps;
    const int k = count(rng);
    for (int attempts = 0; static_cast<int>(exps.size()) < k && attempts < 1000; ++attempts) {
      const double mu = ex(rng);
      bool ok = std::abs(mu - lambda) >= 0.3;
      for (double e : exps) ok = ok && std::abs(mu - e) >= 0.3;
      if (ok) exps.push_back(mu);
    }
    worst = std::max(worst, muntz_distance(lambda, exps).discrepancy);
  }
  note(o, worst <= 1e-10, "max path gap " + sci(worst));

  // dist(t^1, span{1, t^2}) against the stated value 1/(4 sqrt 3)
  const std::vector<double> span{0.0, 2.0};
  const auto d = muntz_distance(1.0, span);
  const double stated = 1.0 / (4.0 * std::sqrt(3.0));
  char buf[160];
  std::snprintf(buf, sizeof buf, "dist(t, span{1,t^2}) = %.12f (gram %.12f), stated %.12f", d.closed_form, d.gram,
                stated);
  note(o, std::abs(d.gram - stated) <= 1e-12 && std::abs(d.closed_form - stated) <= 1e-12, buf);
  if (o.ok) o.detail = "max path gap " + sci(worst) + ", " + buf;
  return o;
}

Outcome forward_pipeline() {
  Outcome o;
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> c(0.2, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    ExperimentConfig cfg;
    const int n = 1 + trial % 3;
    cfg.space = SpaceParams::make(n);
    const auto left = 1 + rng() % 3;
    const auto right = 1 + rng() % 3;
    for (std::size_t i = 0; i < left; ++i) cfg.flanks_left.push_back(RadialProfile::poly_t2({c(rng), -c(rng), c(rng)}));
    for (std::size_t i = 0; i < right; ++i) cfg.flanks_right.push_back(RadialProfile::power_t(c(rng)));
    cfg.middle = SymbolExpr::zero(n);
    cfg.degree = 8;
    worst = std::max(worst, max_abs_entry(assemble_product(cfg)));
  }
  note(o, worst == 0.0, "max product entry " + sci(worst));
  if (o.ok) o.detail = "all products exactly zero";
  return o;
}

Outcome converse_pipeline() {
  Outcome o;
  double smallest = std::numeric_limits<double>::infinity();
  const std::vector<std::vector<int>> ws{{}, {0}, {0, 2}};
  for (const auto& w : ws) {
    for (int support = 0; support <= 4; ++support) {
      ExperimentConfig cfg;
      cfg.space = SpaceParams::make(1);
      cfg.flanks_left = {RadialProfile::constant(1.0)};
      cfg.flanks_right = {engineered_zero_profile(w, cfg.space)};
      cfg.middle = SymbolExpr::zero(1);
      cfg.support = support;
      cfg.degree = support + static_cast<int>(w.size()) + 2;
      const std::string label = "A=" + std::to_string(support) + " |W|=" + std::to_string(w.size());
      try {
        const auto report = run_experiment(cfg);
        note(o, report.W == w, label + ": computed W differs");
        note(o, report.verdict == "forced-zero", label + ": verdict " + report.verdict);
        if (report.certificate) smallest = std::min(smallest, report.certificate->sigma_min);
      } catch (const std::exception& e) {
        note(o, false, label + ": " + e.what());
      }
      cfg.constraint_degree = support + static_cast<int>(w.size());
      bool slack = false;
      try {
        run_experiment(cfg);
      } catch (const SlackError&) {
        slack = true;
      }
      note(o, slack, label + ": insufficient D_c did not raise a slack error");
    }
  }
  note(o, smallest >= 1e-10, "smallest sigma " + sci(smallest));
  if (o.ok) o.detail = "OnlyZero throughout, smallest sigma " + sci(smallest) + ", slack errors raised";
  return o;
}

double independent_minimum(const ExperimentConfig& base, int support) {
  const BasisOrder sup(base.space.dim, support);
  std::vector<Eigen::VectorXd> cols;
  for (const auto& a : sup.items()) {
    for (const auto& b : sup.items()) {
      auto cfg = base;
      cfg.middle = SymbolExpr::monomial(base.space.dim, a, b);
      const Eigen::MatrixXcd p = compose(compose(assemble(SymbolExpr::radial(1, cfg.flanks_left.front()),
                                                          std::make_shared<const BasisOrder>(1, cfg.degree), cfg.space),
                                                 assemble(cfg.middle, std::make_shared<const BasisOrder>(1, cfg.degree),
                                                          cfg.space)),
                                         assemble(SymbolExpr::radial(1, cfg.flanks_right.front()),
                                                  std::make_shared<const BasisOrder>(1, cfg.degree), cfg.space))
                                     .entries();
      Eigen::VectorXd col(p.size());
      for (Eigen::Index j = 0; j < p.cols(); ++j) {
        for (Eigen::Index i = 0; i < p.rows(); ++i) col(j * p.rows() + i) = p(i, j).real();
      }
      cols.push_back(col);
    }
  }
  Eigen::MatrixXd map(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) map.col(static_cast<Eigen::Index>(j)) = cols[j];
  if (map.rows() < map.cols()) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(map).singularValues().minCoeff();
}

Outcome near_zero() {
  Outcome o;
  ExperimentConfig cfg;
  cfg.space = SpaceParams::make(1);
  cfg.degree = 4;
  cfg.flanks_left = {RadialProfile::poly_t2({1.0, 1.0})};
  cfg.flanks_right = {RadialProfile::poly_t2({0.5, 1.0})};
  const int support = 1;
  const auto none = near_zero_search(cfg, support);
  const double none_ref = independent_minimum(cfg, support);
  cfg.flanks_right = {RadialProfile::poly_t2({-0.5, 1.0})};
  const auto zero = near_zero_search(cfg, support);
  const double zero_ref = independent_minimum(cfg, support);
  note(o, none.W.empty() && zero.W == std::vector<int>{0}, "flank zero sets are not {} and {0}");
  note(o, none.minimum > 0.0, "W = {} minimum not positive");
  note(o, zero.minimum <= none.minimum, "minimum grew: " + sci(none.minimum) + " -> " + sci(zero.minimum));
  const double gap = std::max(std::abs(none.minimum - none_ref), std::abs(zero.minimum - zero_ref));
  note(o, gap <= 1e-10, "independent SVD gap " + sci(gap));
  if (o.ok) o.detail = "minimum " + sci(none.minimum) + " -> " + sci(zero.minimum) + ", SVD gap " + sci(gap);
  return o;
}

Outcome trent() {
  Outcome o;
  const auto grid = PairSetDesc::full_grid();
  const auto diag_band = PairSetDesc::diagonal_band(0, 0, {{0, IntegerSetDesc::all_naturals()}}, PairSetDesc::Tail::Empty);
  std::map<long long, IntegerSetDesc> arithmetic;
  for (long long j = -2; j <= 2; ++j) arithmetic.emplace(j, IntegerSetDesc::arithmetic(1, 2));
  const auto band = PairSetDesc::diagonal_band(-2, 2, arithmetic, PairSetDesc::Tail::Full);

  note(o, trent_density_verdict(grid, -3, 3).dense, "FullGrid not Dense");
  const auto diag = trent_density_verdict(diag_band, -3, 3);
  note(o, !diag.dense && diag.witness == 1, "diagonal set: expected NotDense with witness 1");
  const std::vector<std::pair<long long, long long>> ranges{{-1, 1}, {-3, 3}, {-10, 10}, {-2, 40}};
  for (const auto* m : {&grid, &diag_band, &band}) {
    const auto ref = trent_density_verdict(*m, -1, 1);
    for (const auto& [lo, hi] : ranges) {
      const auto v = trent_density_verdict(*m, lo, hi);
      note(o, v.dense == ref.dense && v.witness == ref.witness,
           "verdict changed on range " + std::to_string(lo) + ".." + std::to_string(hi));
    }
  }
  if (o.ok) o.detail = "Dense / NotDense(1), stable across ranges";
  return o;
}

Outcome determinism() {
  using bergman::testing::read_file;
  using bergman::testing::run_command;
  Outcome o;
  const std::string cli = BERGMAN_CLI_PATH;
  const std::string ex = BERGMAN_EXAMPLES_DIR;
  struct Job {
    std::string args;
    std::vector<std::string> files;
  };
  const std::vector<Job> jobs{
      {"omega --symbol " + ex + "/shifted_square.json --smax 12 --csv omega.csv --out omega.json", {"omega.csv", "omega.json"}},
      {"wset --symbol " + ex + "/shifted_square.json --smax 20 --out wset.json", {"wset.json"}},
      {"matrix --symbol " + ex + "/mixed_n2.json --degree 3 --csv matrix.csv --out matrix.json",
       {"matrix.csv", "matrix.json"}},
      {"product --config " + ex + "/experiment.json --csv product.csv --out product.json", {"product.csv", "product.json"}},
      {"muntz-sum --set " + ex + "/powers_of_two.json --out sum.json", {"sum.json"}},
      {"muntz-dist --lambda 3 --exponents 2,4,8,16 --out dist.json", {"dist.json"}},
      {"trent-check --pairs " + ex + "/diagonal.json --jband=-2..2 --out trent.json", {"trent.json"}},
      {"slice-check --symbol " + ex + "/mixed_n2.json --out slice.json", {"slice.json"}},
      {"reconstruct --W 0 --support 2 --dc 5 --out rec.json", {"rec.json"}},
      {"zp-experiment --config " + ex + "/experiment.json --csv zp.csv --out zp.json", {"zp.csv", "zp.json"}},
      {"near-zero --config " + ex + "/experiment.json --support 1 --out nz.json", {"nz.json"}}};
  std::vector<std::string> first;
  for (int pass = 0; pass < 2; ++pass) {
    const auto dir = bergman::testing::scratch_dir("acceptance-" + std::to_string(pass));
    std::size_t idx = 0;
    for (const auto& job : jobs) {
      const auto r = run_command("BERGMAN_OUT_DIR=" + dir.string() + " " + cli + " " + job.args);
      note(o, r.exit_code == 0, "command failed: " + job.args);
      for (const auto& f : job.files) {
        const auto text = read_file(dir / f);
        note(o, !text.empty(), "missing output " + f);
        if (pass == 0) {
          first.push_back(text);
        } else {
          note(o, text == first[idx], "output differs: " + f);
        }
        ++idx;
      }
    }
    std::filesystem::remove_all(dir);
  }
  if (o.ok) o.detail = std::to_string(first.size()) + " data files byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "omega closed form vs quadrature", 5.0, omega_paths},
      {2, "radial symbols assemble diagonally", 30.0, diagonal_representation},
      {3, "assembly matches brute-force integrals", 60.0, assembly_oracle},
      {4, "slicing identity", 30.0, slicing_identity},
      {5, "Muntz distance routes agree", 5.0, muntz_paths},
      {6, "zero middle gives zero product", 10.0, forward_pipeline},
      {7, "engineered zero sets force zero", 20.0, converse_pipeline},
      {8, "near-zero search", 20.0, near_zero},
      {9, "density verdicts", 1.0, trent},
      {10, "CLI determinism", 600.0, determinism}};

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.ok = false;
      o.detail = "took " + sci(secs) + " s (limit " + sci(c.limit_seconds) + " s); " + o.detail;
    }
    if (!o.ok) ++failures;
    std::printf("%s %2d %-40s %7.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
