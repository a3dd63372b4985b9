#include <string>

#include "bergman/json_io.hpp"
#include "json_util.hpp"

namespace bergman {

using nlohmann::json;
using namespace json_util;

json profile_to_json(const RadialProfile& rho) {
  if (const auto* p = rho.get_if<PolyInT2>()) return {{"poly_t2", p->coeffs}};
  if (const auto* p = rho.get_if<PowerT>()) return {{"power_t", p->exponent}};
  if (const auto* p = rho.get_if<Step>()) return {{"step", {{"breaks", p->breaks}, {"values", p->values}}}};
  const auto* p = rho.get_if<Sampled>();
  return {{"sampled", {{"grid", p->grid}, {"values", p->values}}}};
}

RadialProfile profile_from_json(const json& j, const std::string& path) {
  require_object(j, path);
  if (j.size() != 1) throw SchemaError(path, "expected exactly one of poly_t2, power_t, step, sampled");
  const std::string kind = j.begin().key();
  const json& body = j.begin().value();
  const std::string sub = join(path, kind);
  try {
    if (kind == "poly_t2") return RadialProfile::poly_t2(as_real_list(body, sub));
    if (kind == "power_t") return RadialProfile::power_t(as_real(body, sub));
    if (kind == "step") {
      allow_keys(body, sub, {"breaks", "values"});
      return RadialProfile::step(as_real_list(require(body, sub, "breaks"), join(sub, "breaks")),
                                 as_real_list(require(body, sub, "values"), join(sub, "values")));
    }
    if (kind == "sampled") {
      allow_keys(body, sub, {"grid", "values"});
      return RadialProfile::sampled(as_real_list(require(body, sub, "grid"), join(sub, "grid")),
                                    as_real_list(require(body, sub, "values"), join(sub, "values")));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const ConfigError& e) {
    throw SchemaError(sub, e.what());
  }
  throw SchemaError(sub, "unknown radial profile kind");
}

json symbol_to_json(const SymbolExpr& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    terms.push_back({{"c", {t.coeff.real(), t.coeff.imag()}},
                     {"p", t.p.entries()},
                     {"q", t.q.entries()},
                     {"rho", profile_to_json(t.rho)}});
  }
  return {{"dim", f.dim()}, {"terms", terms}};
}

SymbolExpr symbol_from_json(const json& j, const std::string& path) {
  allow_keys(j, path, {"dim", "terms"});
  const auto dim = as_int(require(j, path, "dim"), join(path, "dim"));
  if (dim < 1 || dim > 64) throw SchemaError(join(path, "dim"), "dimension must be in [1, 64]");
  const auto& terms = require(j, path, "terms");
  const std::string terms_path = join(path, "terms");
  if (!terms.is_array()) throw SchemaError(terms_path, "expected an array");

  std::vector<SymbolTerm> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = at_index(terms_path, i);
    const auto& t = terms[i];
    allow_keys(t, tp, {"c", "p", "q", "rho"});
    const auto c = as_real_list(require(t, tp, "c"), join(tp, "c"));
    if (c.size() != 2) throw SchemaError(join(tp, "c"), "expected [re, im]");
    auto read_index = [&](const char* key) {
      const auto e = as_int_list(require(t, tp, key), join(tp, key));
      if (static_cast<long long>(e.size()) != dim) throw SchemaError(join(tp, key), "length must equal dim");
      for (int v : e) {
        if (v < 0) throw SchemaError(join(tp, key), "entries must be non-negative");
      }
      return MultiIndex(e);
    };
    out.push_back(SymbolTerm{Complex(c[0], c[1]), read_index("p"), read_index("q"),
                             profile_from_json(require(t, tp, "rho"), join(tp, "rho"))});
  }
  return SymbolExpr(static_cast<int>(dim), std::move(out));
}

SymbolExpr parse_symbol(std::string_view json_text) { return symbol_from_json(parse_text(json_text)); }

std::string serialize_symbol(const SymbolExpr& f) { return symbol_to_json(f).dump(); }

}  // namespace bergman
