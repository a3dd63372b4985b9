#pragma once

// Strict JSON field access with path-qualified SchemaError diagnostics.

#include <cmath>
#include <initializer_list>
#include <limits>
#include <json.hpp>
#include <string>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman::json_util {

using json = nlohmann::json;

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "<root>" : path, "expected an object");
}

inline void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    if (!ok) throw SchemaError(join(path, k), "unknown field");
  }
}

inline const json& require(const json& j, const std::string& path, const char* key) {
  require_object(j, path);
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(join(path, key), "missing required field");
  return *it;
}

inline double as_real(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

inline long long as_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9e15) return static_cast<long long>(v);
  }
  throw SchemaError(path, "expected an integer");
}

inline std::vector<double> as_real_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_real(j[i], at_index(path, i)));
  return out;
}

inline std::vector<int> as_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto v = as_int(j[i], at_index(path, i));
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      throw SchemaError(at_index(path, i), "integer out of range");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

inline json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("<document>", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace bergman::json_util
