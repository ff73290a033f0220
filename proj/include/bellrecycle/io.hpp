#pragma once

#include <string>

#include <json.hpp>

#include "bellrecycle/bell.hpp"
#include "bellrecycle/monogamy.hpp"
#include "bellrecycle/states.hpp"

namespace bellrecycle {

/// {"a": [3], "b": [3], "T": [[3],[3],[3]]}.
nlohmann::json state_to_json(const TwoQubitState& state);

/// Inverse of state_to_json. "a" and "b" default to zero; "T" may also be
/// written "diag(t1,t2,t3)". Validated: throws InvalidState for non-positive
/// input and InvalidArgument for malformed JSON.
TwoQubitState state_from_json(const nlohmann::json& j);

/// Correlation matrix only, without the positivity check.
Matrix3 correlations_from_json(const nlohmann::json& j);

nlohmann::json observable_to_json(const Observable& obs);
Observable observable_from_json(const nlohmann::json& j);

nlohmann::json pair_to_json(const MeasurementPair& pair);
MeasurementPair pair_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const ScenarioConfig& cfg);
ScenarioConfig config_from_json(const nlohmann::json& j);

nlohmann::json result_to_json(const ScenarioResult& res);

/// Fixed 12-significant-digit rendering used for every CSV/JSON number.
std::string format_number(double value);

/// Rounds to 12 significant digits so JSON output matches CSV output.
double round12(double value);

}  // namespace bellrecycle
