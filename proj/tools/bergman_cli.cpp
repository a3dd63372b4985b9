// bergman: command-line front end for the Bergman-space Toeplitz laboratory.
//
// Every subcommand prints {"manifest": {...}, "result": {...}} to stdout.
// With --out FILE the result alone is written to FILE and the manifest to
// FILE.manifest.json, so data files are byte-identical across runs. CSV
// outputs are accompanied by their own CSV.manifest.json.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/harness.hpp"
#include "bergman/json_io.hpp"
#include "bergman/muntz.hpp"
#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/reconstruction.hpp"
#include "bergman/spectra.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bergman;

namespace {

constexpr double kQuadratureTolerance = 1e-12;

struct Tolerances {
  double eps_zero = 1e-10;
  double sigma_min = kSigmaThreshold;
};

struct Run {
  std::string command;
  json config = json::object();
  Tolerances tol;
  std::string out;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest(const Run& run) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - run.start).count();
  return {{"command", run.command},
          {"config", run.config},
          {"version", BERGMAN_VERSION},
          {"tolerances",
           {{"eps_zero", run.tol.eps_zero}, {"quadrature", kQuadratureTolerance}, {"sigma_min", run.tol.sigma_min}}},
          {"timestamp", timestamp_utc()},
          {"wall_time_seconds", wall}};
}

fs::path output_path(const std::string& name) {
  fs::path p(name);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("BERGMAN_OUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + p.string());
  f << text;
  if (!f) throw ConfigError("failed writing output file " + p.string());
}

void write_with_manifest(const Run& run, const std::string& name, const std::string& text) {
  const auto p = output_path(name);
  write_file(p, text);
  write_file(fs::path(p.string() + ".manifest.json"), manifest(run).dump(2) + "\n");
}

void emit(const Run& run, const json& result) {
  if (!run.out.empty()) write_with_manifest(run, run.out, result.dump(2) + "\n");
  std::cout << json{{"manifest", manifest(run)}, {"result", result}}.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw SchemaError(path, std::string("malformed JSON: ") + e.what());
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

/// Row-major complex matrix: first column the row label, then a re/im pair
/// of columns per basis label.
std::string matrix_csv(const TruncatedOperator& op) {
  std::string out = "row";
  const auto& order = op.order();
  for (std::size_t c = 0; c < order.size(); ++c) {
    out += "," + quoted("re " + order[c].label()) + "," + quoted("im " + order[c].label());
  }
  out += "\n";
  for (std::size_t r = 0; r < order.size(); ++r) {
    out += quoted(order[r].label());
    for (std::size_t c = 0; c < order.size(); ++c) {
      const auto v = op.entries()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      out += "," + num(v.real()) + "," + num(v.imag());
    }
    out += "\n";
  }
  return out;
}

json matrix_json(const TruncatedOperator& op, bool with_entries) {
  json labels = json::array();
  for (const auto& m : op.order().items()) labels.push_back(m.label());
  json out = {{"size", op.size()},
              {"labels", labels},
              {"exact", op.exact_entries()},
              {"provenance", op.provenance().description},
              {"method", to_string(op.provenance().method)},
              {"max_abs_entry", max_abs_entry(op)},
              {"frobenius_norm", frobenius_norm(op)}};
  if (with_entries) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < op.size(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < op.size(); ++c) row.push_back({op.entries()(r, c).real(), op.entries()(r, c).imag()});
      rows.push_back(row);
    }
    out["entries"] = rows;
  }
  return out;
}

/// A radial symbol with real coefficients as a single profile.
RadialProfile radial_profile_of(const SymbolExpr& f) {
  if (!f.is_radial()) throw ConfigError("symbol must be radial (all p and q zero)");
  if (f.empty()) return RadialProfile::constant(0.0);
  for (const auto& t : f.terms()) {
    if (t.coeff.imag() != 0.0) throw ConfigError("radial symbol must have real coefficients");
  }
  if (f.terms().size() == 1) {
    const auto& t = f.terms().front();
    return t.coeff.real() == 1.0 ? t.rho : t.rho.scaled(t.coeff.real());
  }
  std::vector<double> sum;
  for (const auto& t : f.terms()) {
    const auto poly = t.rho.u_polynomial();
    if (!poly) throw ConfigError("a radial symbol with several terms must have polynomial profiles");
    if (poly->size() > sum.size()) sum.resize(poly->size(), 0.0);
    for (std::size_t i = 0; i < poly->size(); ++i) sum[i] += t.coeff.real() * (*poly)[i];
  }
  return RadialProfile::poly_t2(std::move(sum));
}

SymbolExpr load_symbol(Run& run, const std::string& path) {
  const auto j = read_json_file(path);
  run.config["symbol"] = j;
  return symbol_from_json(j);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::string s = text;
  if (!s.empty() && s.front() == '[') s.erase(s.begin());
  if (!s.empty() && s.back() == ']') s.pop_back();
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw ConfigError(std::string(what) + ": not an integer list: " + text);
    }
    out.push_back(v);
  }
  return out;
}

std::pair<long long, long long> parse_band(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ConfigError("--jband expects LO..HI, got " + text);
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string lo = text.substr(0, dots);
    const std::string hi = text.substr(dots + 2);
    const long long a = std::stoll(lo, &u1);
    const long long b = std::stoll(hi, &u2);
    if (u1 != lo.size() || u2 != hi.size()) throw std::invalid_argument("trailing");
    return {a, b};
  } catch (const std::exception&) {
    throw ConfigError("--jband expects LO..HI, got " + text);
  }
}

void add_out_option(CLI::App* sub, Run& run) {
  sub->add_option("--out", run.out, "Write the result JSON here (manifest alongside)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman-space Toeplitz operator laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BERGMAN_VERSION);
  Run run;

  // omega
  std::string symbol_file;
  std::optional<int> dim_flag;
  double alpha = 0.0;
  int smax = 10;
  std::string csv_out;
  auto* omega_cmd = app.add_subcommand("omega", "Eigenvalue sequence omega(f, s) of a radial symbol");
  omega_cmd->add_option("--symbol", symbol_file, "Symbol JSON file")->required();
  omega_cmd->add_option("--n", dim_flag, "Ball dimension (defaults to the symbol's)");
  omega_cmd->add_option("--alpha", alpha, "Weight exponent alpha > -1");
  omega_cmd->add_option("--smax", smax, "Largest degree s")->required();
  omega_cmd->add_option("--csv", csv_out, "Write the (s, omega) table as CSV");
  add_out_option(omega_cmd, run);

  // wset
  std::string tail_file;
  auto* wset_cmd = app.add_subcommand("wset", "Degree zero set W of a radial symbol");
  wset_cmd->add_option("--symbol", symbol_file, "Symbol JSON file")->required();
  wset_cmd->add_option("--eps", run.tol.eps_zero, "Zero threshold eps_zero");
  wset_cmd->add_option("--smax", smax, "Largest degree s")->required();
  wset_cmd->add_option("--n", dim_flag, "Ball dimension (defaults to the symbol's)");
  wset_cmd->add_option("--alpha", alpha, "Weight exponent alpha > -1");
  wset_cmd->add_option("--tail", tail_file, "Set JSON describing zero degrees beyond smax");
  add_out_option(wset_cmd, run);

  // matrix
  int degree = 4;
  auto* matrix_cmd = app.add_subcommand("matrix", "Truncated Toeplitz matrix of a symbol");
  matrix_cmd->add_option("--symbol", symbol_file, "Symbol JSON file")->required();
  matrix_cmd->add_option("--degree", degree, "Truncation degree D")->required();
  matrix_cmd->add_option("--alpha", alpha, "Weight exponent alpha > -1");
  matrix_cmd->add_option("--csv", csv_out, "Write the matrix as CSV instead of inline entries");
  add_out_option(matrix_cmd, run);

  // product
  std::string config_file;
  auto* product_cmd = app.add_subcommand("product", "Truncated product T_{f_1}..T_f..T_{g_M}");
  product_cmd->add_option("--config", config_file, "Experiment config JSON")->required();
  product_cmd->add_option("--csv", csv_out, "Write the matrix as CSV instead of inline entries");
  add_out_option(product_cmd, run);

  // muntz-sum
  std::string set_file;
  auto* sum_cmd = app.add_subcommand("muntz-sum", "Classify sum 1/s over a described set");
  sum_cmd->add_option("--set", set_file, "Set JSON file")->required();
  add_out_option(sum_cmd, run);

  // muntz-dist
  double lambda = 1.0;
  std::vector<double> exponents;
  auto* dist_cmd = app.add_subcommand("muntz-dist", "L2[0,1] distance from t^lambda to span{t^mu}");
  dist_cmd->add_option("--lambda", lambda, "Target exponent lambda > 0")->required();
  dist_cmd->add_option("--exponents", exponents, "Comma-separated exponents")->delimiter(',');
  add_out_option(dist_cmd, run);

  // trent-check
  std::string pairs_file;
  std::string jband;
  auto* trent_cmd = app.add_subcommand("trent-check", "Density verdict for span{z^s conj(z)^t : (s,t) in M}");
  trent_cmd->add_option("--pairs", pairs_file, "Pair-set JSON file")->required();
  trent_cmd->add_option("--jband", jband, "Diagonal range LO..HI (use --jband=-3..3 for negative LO)")->required();
  add_out_option(trent_cmd, run);

  // slice-check
  int max_degree = kDefaultExactness;
  auto* slice_cmd = app.add_subcommand("slice-check", "Polar vs slicing-recursion ball integral");
  slice_cmd->add_option("--symbol", symbol_file, "Integrand symbol JSON file")->required();
  slice_cmd->add_option("--n", dim_flag, "Ball dimension (must match the symbol)");
  slice_cmd->add_option("--alpha", alpha, "Weight exponent alpha > -1");
  slice_cmd->add_option("--max-degree", max_degree, "Exactness budget of the cubature rules");
  add_out_option(slice_cmd, run);

  // reconstruct
  std::string w_list;
  int support = 2;
  int dc = 0;
  int dim = 1;
  auto* rec_cmd = app.add_subcommand("reconstruct", "Nullspace certificate of the constrained moment system");
  rec_cmd->add_option("--W", w_list, "Excluded degrees, comma-separated (empty for none)")->required();
  std::optional<int> rec_support;
  rec_cmd->add_option("--support", rec_support, "Support degree A (taken from --symbol when given)");
  rec_cmd->add_option("--dc", dc, "Constraint degree D_c")->required();
  rec_cmd->add_option("--n", dim, "Ball dimension");
  rec_cmd->add_option("--alpha", alpha, "Weight exponent alpha > -1");
  rec_cmd->add_option("--sigma-min", run.tol.sigma_min, "OnlyZero threshold on equilibrated singular values");
  rec_cmd->add_option("--symbol", symbol_file, "Also run the annihilation test on this polynomial symbol");
  add_out_option(rec_cmd, run);

  // zp-experiment
  auto* zp_cmd = app.add_subcommand("zp-experiment", "Zero-product experiment with radial flanks");
  zp_cmd->add_option("--config", config_file, "Experiment config JSON")->required();
  zp_cmd->add_option("--csv", csv_out, "Write the recovered moments as CSV");
  add_out_option(zp_cmd, run);

  // near-zero
  std::size_t budget = 4'000'000;
  auto* nz_cmd = app.add_subcommand("near-zero", "Smallest product over unit-norm middle symbols");
  nz_cmd->add_option("--config", config_file, "Experiment config JSON (middle ignored)")->required();
  nz_cmd->add_option("--support", support, "Middle support degree")->required();
  nz_cmd->add_option("--budget", budget, "Maximum number of map entries");
  add_out_option(nz_cmd, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto* sub = app.get_subcommands().front();
    run.command = sub->get_name();
    for (const auto* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      const auto results = opt->results();
      std::string key = opt->get_name();
      while (!key.empty() && key.front() == '-') key.erase(key.begin());
      run.config[key] = results.size() == 1 ? json(results.front()) : json(results);
    }

    if (sub == omega_cmd) {
      const auto f = load_symbol(run, symbol_file);
      const auto space = SpaceParams::make(dim_flag.value_or(f.dim()), alpha);
      if (smax < 0) throw ConfigError("--smax must be >= 0");
      const auto seq = omega_sequence(radial_profile_of(f), space, smax);
      json s = json::array();
      for (int i = 0; i <= smax; ++i) s.push_back(i);
      const json result = {{"n", space.dim},
                           {"alpha", space.alpha},
                           {"s", s},
                           {"omega", seq.values},
                           {"method", to_string(seq.method)}};
      if (!csv_out.empty()) {
        std::string csv = "s,omega\n";
        for (int i = 0; i <= smax; ++i) csv += std::to_string(i) + "," + num(seq.values[static_cast<std::size_t>(i)]) + "\n";
        write_with_manifest(run, csv_out, csv);
      }
      emit(run, result);
    } else if (sub == wset_cmd) {
      const auto f = load_symbol(run, symbol_file);
      const auto space = SpaceParams::make(dim_flag.value_or(f.dim()), alpha);
      if (smax < 0) throw ConfigError("--smax must be >= 0");
      std::optional<IntegerSetDesc> tail;
      if (!tail_file.empty()) {
        const auto j = read_json_file(tail_file);
        run.config["tail"] = j;
        tail = set_from_json(j);
      }
      const auto w = degree_zero_set(omega_sequence(radial_profile_of(f), space, smax), run.tol.eps_zero);
      emit(run, {{"W", w.degrees},
                 {"margin", w.margin},
                 {"eps_zero", w.eps_zero},
                 {"smax", w.s_max},
                 {"sparsity", to_string(sparsity_verdict(w, tail))}});
    } else if (sub == matrix_cmd) {
      const auto f = load_symbol(run, symbol_file);
      const auto space = SpaceParams::make(f.dim(), alpha);
      if (degree < 0) throw ConfigError("--degree must be >= 0");
      const auto order = std::make_shared<const BasisOrder>(enumerate_basis(space, degree));
      const auto op = assemble(f, order, space);
      if (!csv_out.empty()) write_with_manifest(run, csv_out, matrix_csv(op));
      emit(run, matrix_json(op, csv_out.empty()));
    } else if (sub == product_cmd) {
      const auto j = read_json_file(config_file);
      run.config["experiment"] = j;
      const auto cfg = experiment_from_json(j);
      run.tol.eps_zero = cfg.eps_zero;
      const auto op = assemble_product(cfg);
      if (!csv_out.empty()) write_with_manifest(run, csv_out, matrix_csv(op));
      emit(run, matrix_json(op, csv_out.empty()));
    } else if (sub == sum_cmd) {
      const auto j = read_json_file(set_file);
      run.config["set"] = j;
      emit(run, {{"class", to_string(reciprocal_sum_class(set_from_json(j)))}});
    } else if (sub == dist_cmd) {
      const auto d = muntz_distance(lambda, exponents);
      emit(run, {{"lambda", lambda},
                 {"exponents", exponents},
                 {"closed_form", d.closed_form},
                 {"gram", d.gram},
                 {"discrepancy", d.discrepancy}});
    } else if (sub == trent_cmd) {
      const auto j = read_json_file(pairs_file);
      run.config["pairs"] = j;
      const auto [lo, hi] = parse_band(jband);
      emit(run, trent_verdict_to_json(trent_density_verdict(pair_set_from_json(j), lo, hi)));
    } else if (sub == slice_cmd) {
      const auto g = load_symbol(run, symbol_file);
      if (dim_flag && *dim_flag != g.dim()) throw ConfigError("--n does not match the symbol dimension");
      const auto c = slicing_check(g, SpaceParams::make(g.dim(), alpha), max_degree);
      emit(run, {{"lhs", {c.lhs.real(), c.lhs.imag()}},
                 {"rhs", {c.rhs.real(), c.rhs.imag()}},
                 {"discrepancy", c.discrepancy}});
    } else if (sub == rec_cmd) {
      const auto space = SpaceParams::make(dim, alpha);
      const auto w = parse_int_list(w_list, "--W");
      if (!(run.tol.sigma_min > 0.0)) throw ConfigError("--sigma-min must be > 0");
      const double floor = run.tol.sigma_min * (kSigmaFloor / kSigmaThreshold);
      if (symbol_file.empty()) {
        if (!rec_support) throw ConfigError("--support is required without --symbol");
        const auto sys = build_constraints(*rec_support, w, dc, space);
        emit(run, certificate_to_json(nullspace_certificate(sys, run.tol.sigma_min, floor)));
      } else {
        const auto f = load_symbol(run, symbol_file);
        if (f.dim() != space.dim) throw ConfigError("symbol dimension does not match --n");
        auto report = annihilation_test(f, w, dc, space);
        if (report.certificate && run.tol.sigma_min != kSigmaThreshold) {
          const int a = f.empty() ? 0 : f.support_degree();
          report.certificate = nullspace_certificate(build_constraints(a, w, dc, space), run.tol.sigma_min, floor);
          report.verdict = report.certificate->verdict == NullspaceCertificate::Verdict::OnlyZero ? "forced-zero"
                                                                                                  : "not-forced";
        }
        emit(run, annihilation_to_json(report));
      }
    } else if (sub == zp_cmd) {
      const auto j = read_json_file(config_file);
      run.config["experiment"] = j;
      const auto cfg = experiment_from_json(j);
      run.tol.eps_zero = cfg.eps_zero;
      run.tol.sigma_min = cfg.sigma_min;
      const auto report = run_experiment(cfg);
      if (!csv_out.empty()) {
        std::string csv = "m,k,re,im\n";
        for (const auto& r : report.recovered) {
          csv += quoted(r.m.label()) + "," + quoted(r.k.label()) + "," + num(r.moment.real()) + "," +
                 num(r.moment.imag()) + "\n";
        }
        write_with_manifest(run, csv_out, csv);
      }
      emit(run, report_to_json(report));
    } else if (sub == nz_cmd) {
      const auto j = read_json_file(config_file);
      run.config["experiment"] = j;
      const auto cfg = experiment_from_json(j);
      run.tol.eps_zero = cfg.eps_zero;
      emit(run, near_zero_to_json(near_zero_search(cfg, support, budget)));
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "bergman: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "bergman: numerical error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "bergman: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "bergman: internal error: " << e.what() << "\n";
    return 1;
  }
}
