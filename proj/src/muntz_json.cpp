#include <string>

#include "bergman/json_io.hpp"
#include "json_util.hpp"

namespace bergman {

using nlohmann::json;
using namespace json_util;

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

const char* tail_name(PairSetDesc::Tail t) { return t == PairSetDesc::Tail::Full ? "full" : "empty"; }

}  // namespace

json set_to_json(const IntegerSetDesc& s) {
  return std::visit(
      Overloaded{
          [](const IntegerSetDesc::Finite& f) -> json { return {{"finite", f.elements}}; },
          [](const IntegerSetDesc::Arithmetic& a) -> json {
            return {{"arithmetic", {{"start", a.start}, {"step", a.step}}}};
          },
          [](const IntegerSetDesc::Geometric& g) -> json {
            return {{"geometric", {{"base", g.base}, {"start", g.start_exponent}}}};
          },
          [](const IntegerSetDesc::Union& u) -> json {
            json parts = json::array();
            for (const auto& p : u.parts) parts.push_back(set_to_json(p));
            return {{"union", parts}};
          },
          [](const IntegerSetDesc::Complement& c) -> json { return {{"complement", set_to_json(*c.inner)}}; },
          [](const IntegerSetDesc::Shifted& s) -> json {
            return {{"shifted", {{"set", set_to_json(*s.inner)}, {"offset", s.offset}}}};
          },
      },
      s.node());
}

IntegerSetDesc set_from_json(const json& j, const std::string& path) {
  require_object(j, path);
  if (j.size() != 1) {
    throw SchemaError(path.empty() ? "<root>" : path,
                      "expected exactly one of finite, arithmetic, geometric, union, complement, shifted");
  }
  const std::string kind = j.begin().key();
  const json& body = j.begin().value();
  const std::string sub = join(path, kind);
  try {
    if (kind == "finite") {
      if (!body.is_array()) throw SchemaError(sub, "expected an array of integers");
      std::vector<long long> elems;
      for (std::size_t i = 0; i < body.size(); ++i) elems.push_back(as_int(body[i], at_index(sub, i)));
      return IntegerSetDesc::finite(std::move(elems));
    }
    if (kind == "arithmetic") {
      allow_keys(body, sub, {"start", "step"});
      return IntegerSetDesc::arithmetic(as_int(require(body, sub, "start"), join(sub, "start")),
                                        as_int(require(body, sub, "step"), join(sub, "step")));
    }
    if (kind == "geometric") {
      allow_keys(body, sub, {"base", "start"});
      const long long start = body.contains("start") ? as_int(body["start"], join(sub, "start")) : 0;
      return IntegerSetDesc::geometric(as_int(require(body, sub, "base"), join(sub, "base")), start);
    }
    if (kind == "union") {
      if (!body.is_array()) throw SchemaError(sub, "expected an array of sets");
      std::vector<IntegerSetDesc> parts;
      for (std::size_t i = 0; i < body.size(); ++i) parts.push_back(set_from_json(body[i], at_index(sub, i)));
      return IntegerSetDesc::set_union(std::move(parts));
    }
    if (kind == "complement") return IntegerSetDesc::complement(set_from_json(body, sub));
    if (kind == "shifted") {
      allow_keys(body, sub, {"set", "offset"});
      return IntegerSetDesc::shifted(set_from_json(require(body, sub, "set"), join(sub, "set")),
                                     as_int(require(body, sub, "offset"), join(sub, "offset")));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const ConfigError& e) {
    throw SchemaError(sub, e.what());
  }
  throw SchemaError(sub, "unknown set kind");
}

json pair_set_to_json(const PairSetDesc& m) {
  return std::visit(Overloaded{
                        [](const PairSetDesc::FullGrid&) -> json { return {{"full_grid", true}}; },
                        [](const PairSetDesc::DiagonalBand& b) -> json {
                          json diags = json::object();
                          for (const auto& [j, s] : b.diagonals) diags[std::to_string(j)] = set_to_json(s);
                          return {{"diagonal_band",
                                   {{"j_min", b.j_min},
                                    {"j_max", b.j_max},
                                    {"diagonals", diags},
                                    {"tail", tail_name(b.tail)}}}};
                        },
                        [](const PairSetDesc::ExplicitList& l) -> json {
                          json pairs = json::array();
                          for (const auto& [s, t] : l.pairs) pairs.push_back({s, t});
                          return {{"explicit", pairs}};
                        },
                    },
                    m.node());
}

PairSetDesc pair_set_from_json(const json& j, const std::string& path) {
  require_object(j, path);
  if (j.size() != 1) {
    throw SchemaError(path.empty() ? "<root>" : path, "expected exactly one of full_grid, diagonal_band, explicit");
  }
  const std::string kind = j.begin().key();
  const json& body = j.begin().value();
  const std::string sub = join(path, kind);
  try {
    if (kind == "full_grid") {
      if (!body.is_boolean() || !body.get<bool>()) throw SchemaError(sub, "expected true");
      return PairSetDesc::full_grid();
    }
    if (kind == "diagonal_band") {
      allow_keys(body, sub, {"j_min", "j_max", "diagonals", "tail"});
      const auto j_min = as_int(require(body, sub, "j_min"), join(sub, "j_min"));
      const auto j_max = as_int(require(body, sub, "j_max"), join(sub, "j_max"));
      std::map<long long, IntegerSetDesc> diags;
      if (body.contains("diagonals")) {
        const std::string dp = join(sub, "diagonals");
        require_object(body["diagonals"], dp);
        for (const auto& [key, value] : body["diagonals"].items()) {
          long long jj = 0;
          std::size_t used = 0;
          try {
            jj = std::stoll(key, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used == 0 || used != key.size()) throw SchemaError(join(dp, key), "diagonal keys must be integers");
          diags.emplace(jj, set_from_json(value, join(dp, key)));
        }
      }
      auto tail = PairSetDesc::Tail::Empty;
      if (body.contains("tail")) {
        const auto& t = body["tail"];
        if (t == "full") {
          tail = PairSetDesc::Tail::Full;
        } else if (t != "empty") {
          throw SchemaError(join(sub, "tail"), "expected \"full\" or \"empty\"");
        }
      }
      return PairSetDesc::diagonal_band(j_min, j_max, std::move(diags), tail);
    }
    if (kind == "explicit") {
      if (!body.is_array()) throw SchemaError(sub, "expected an array of [s, t] pairs");
      std::vector<std::pair<long long, long long>> pairs;
      for (std::size_t i = 0; i < body.size(); ++i) {
        const auto& p = body[i];
        if (!p.is_array() || p.size() != 2) throw SchemaError(at_index(sub, i), "expected [s, t]");
        pairs.emplace_back(as_int(p[0], at_index(at_index(sub, i), 0)), as_int(p[1], at_index(at_index(sub, i), 1)));
      }
      return PairSetDesc::explicit_list(std::move(pairs));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const ConfigError& e) {
    throw SchemaError(sub, e.what());
  }
  throw SchemaError(sub, "unknown pair-set kind");
}

json trent_verdict_to_json(const TrentVerdict& v) {
  json out;
  out["verdict"] = v.dense ? "Dense" : "NotDense";
  if (v.witness) out["witness"] = *v.witness;
  json diags = json::array();
  for (const auto& d : v.per_diagonal) {
    diags.push_back({{"j", d.j}, {"class", to_string(d.sum_class)}, {"from_tail", d.from_tail}});
  }
  out["per_diagonal"] = diags;
  return out;
}

}  // namespace bergman
