#pragma once

// JSON mirrors of the library's value types. Every reader is strict: unknown
// fields and type mismatches raise SchemaError naming the offending path.

#include <json.hpp>
#include <string>

#include "bergman/harness.hpp"
#include "bergman/muntz.hpp"
#include "bergman/reconstruction.hpp"
#include "bergman/symbols.hpp"

namespace bergman {

nlohmann::json profile_to_json(const RadialProfile& rho);
RadialProfile profile_from_json(const nlohmann::json& j, const std::string& path = "rho");

nlohmann::json symbol_to_json(const SymbolExpr& f);
SymbolExpr symbol_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json set_to_json(const IntegerSetDesc& s);
IntegerSetDesc set_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json pair_set_to_json(const PairSetDesc& m);
PairSetDesc pair_set_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json trent_verdict_to_json(const TrentVerdict& v);

nlohmann::json certificate_to_json(const NullspaceCertificate& c);
nlohmann::json annihilation_to_json(const AnnihilationReport& r);

ExperimentConfig experiment_from_json(const nlohmann::json& j);
nlohmann::json experiment_to_json(const ExperimentConfig& cfg);
nlohmann::json report_to_json(const ExperimentReport& r);
nlohmann::json near_zero_to_json(const NearZeroReport& r);

}  // namespace bergman
