#include <string>

#include "bergman/json_io.hpp"
#include "json_util.hpp"

namespace bergman {

using nlohmann::json;
using namespace json_util;

namespace {

json offset_json(const std::vector<int>& offset) {
  if (offset.size() == 1) return offset.front();
  return offset;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

const char* verdict_name(NullspaceCertificate::Verdict v) {
  return v == NullspaceCertificate::Verdict::OnlyZero ? "OnlyZero" : "Nontrivial";
}

json moment_json(const MultiIndex& m, const MultiIndex& k, Complex value) {
  return {{"m", m.entries()}, {"k", k.entries()}, {"moment", complex_json(value)}};
}

}  // namespace

json certificate_to_json(const NullspaceCertificate& c) {
  json blocks = json::array();
  for (const auto& b : c.blocks) {
    blocks.push_back({{"j", offset_json(b.offset)}, {"rows", b.rows}, {"cols", b.cols}, {"sigma_min", b.sigma_min}});
  }
  json out = {{"verdict", verdict_name(c.verdict)},
              {"sigma_min", c.sigma_min},
              {"threshold", c.threshold},
              {"blocks", blocks},
              {"violations", json::array()}};
  if (!c.witness.empty()) {
    json w = json::array();
    for (const auto& [ab, u] : c.witness) w.push_back({{"a", ab.first.entries()}, {"b", ab.second.entries()}, {"u", u}});
    out["witness"] = w;
  }
  return out;
}

json annihilation_to_json(const AnnihilationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(moment_json(v.m, v.k, v.value));
  json out = {{"verdict", r.verdict},
              {"moments_checked", r.moments_checked},
              {"max_abs_moment", r.max_abs_moment},
              {"violations", violations}};
  if (r.certificate) {
    out["sigma_min"] = r.certificate->sigma_min;
    out["certificate"] = certificate_to_json(*r.certificate);
  }
  return out;
}

ExperimentConfig experiment_from_json(const json& j) {
  allow_keys(j, "", {"dim", "alpha", "flanks_left", "flanks_right", "middle", "degree", "eps_zero", "sigma_min", "support",
                     "dc", "w_tail"});
  ExperimentConfig cfg;
  const auto dim = as_int(require(j, "", "dim"), "dim");
  const double alpha = j.contains("alpha") ? as_real(j["alpha"], "alpha") : 0.0;
  try {
    cfg.space = SpaceParams::make(static_cast<int>(dim), alpha);
  } catch (const ConfigError& e) {
    throw SchemaError("dim", e.what());
  }

  auto read_flanks = [&](const char* key) {
    std::vector<RadialProfile> out;
    if (!j.contains(key)) return out;
    const auto& list = j[key];
    if (!list.is_array()) throw SchemaError(key, "expected an array of radial profiles");
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(profile_from_json(list[i], at_index(key, i)));
    return out;
  };
  cfg.flanks_left = read_flanks("flanks_left");
  cfg.flanks_right = read_flanks("flanks_right");

  cfg.middle = j.contains("middle") ? symbol_from_json(j["middle"], "middle") : SymbolExpr::zero(cfg.space.dim);
  if (cfg.middle.dim() != cfg.space.dim) throw SchemaError("middle.dim", "must equal dim");

  cfg.degree = static_cast<int>(as_int(require(j, "", "degree"), "degree"));
  if (cfg.degree < 0 || cfg.degree > 200) throw SchemaError("degree", "must be in [0, 200]");
  if (j.contains("eps_zero")) {
    cfg.eps_zero = as_real(j["eps_zero"], "eps_zero");
    if (!(cfg.eps_zero > 0.0)) throw SchemaError("eps_zero", "must be positive");
  }
  if (j.contains("sigma_min")) {
    cfg.sigma_min = as_real(j["sigma_min"], "sigma_min");
    if (!(cfg.sigma_min > 0.0)) throw SchemaError("sigma_min", "must be positive");
  }
  if (j.contains("support")) {
    cfg.support = static_cast<int>(as_int(j["support"], "support"));
    if (cfg.support < 0) throw SchemaError("support", "must be >= 0");
  }
  if (j.contains("dc")) cfg.constraint_degree = static_cast<int>(as_int(j["dc"], "dc"));
  if (j.contains("w_tail")) cfg.w_tail = set_from_json(j["w_tail"], "w_tail");
  return cfg;
}

json experiment_to_json(const ExperimentConfig& cfg) {
  json left = json::array();
  json right = json::array();
  for (const auto& f : cfg.flanks_left) left.push_back(profile_to_json(f));
  for (const auto& g : cfg.flanks_right) right.push_back(profile_to_json(g));
  json out = {{"dim", cfg.space.dim},      {"alpha", cfg.space.alpha},       {"flanks_left", left},
              {"flanks_right", right},     {"middle", symbol_to_json(cfg.middle)}, {"degree", cfg.degree},
              {"eps_zero", cfg.eps_zero},  {"sigma_min", cfg.sigma_min},             {"support", cfg.support}};
  if (cfg.constraint_degree) out["dc"] = *cfg.constraint_degree;
  if (cfg.w_tail) out["w_tail"] = set_to_json(*cfg.w_tail);
  return out;
}

json report_to_json(const ExperimentReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(moment_json(v.m, v.k, v.moment));
  json out = {{"verdict", r.verdict},
              {"product_max_abs", r.product_max_abs},
              {"W", r.W},
              {"flank_zero_sets", r.flank_zero_sets},
              {"sparsity", to_string(r.sparsity)},
              {"moments_checked", r.recovered.size()},
              {"max_abs_moment", r.max_abs_moment},
              {"violations", violations},
              {"constraint_degree", r.constraint_degree},
              {"middle_in_class", r.middle_in_class}};
  out["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : json(nullptr);
  return out;
}

json near_zero_to_json(const NearZeroReport& r) {
  json minimizer = json::array();
  for (const auto& [ab, u] : r.minimizer) {
    minimizer.push_back({{"a", ab.first.entries()}, {"b", ab.second.entries()}, {"u", u}});
  }
  return {{"minimum", r.minimum},   {"product_max_abs", r.product_max_abs}, {"rows", r.rows},
          {"cols", r.cols},         {"W", r.W},                             {"minimizer", minimizer}};
}

}  // namespace bergman
