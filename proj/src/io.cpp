#include "bellrecycle/io.hpp"

#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

namespace bellrecycle {
namespace {

using nlohmann::json;

json vec_to_json(const Vector3& v) { return json::array({round12(v(0)), round12(v(1)), round12(v(2))}); }

Vector3 vec_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be an array of 3 numbers");
  }
  Vector3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be numeric");
    v(i) = j[i].get<double>();
  }
  return v;
}

Matrix3 diag_from_string(const std::string& text) {
  static const std::regex pattern(R"(^\s*diag\s*\(([^,]+),([^,]+),([^,\)]+)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorCode::InvalidArgument, "T string must look like diag(t1,t2,t3)");
  }
  Matrix3 t = Matrix3::Zero();
  try {
    for (int i = 0; i < 3; ++i) t(i, i) = std::stod(m[i + 1].str());
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "non-numeric entry in diag(...)");
  }
  return t;
}

}  // namespace

double round12(double value) {
  if (value == 0.0) return 0.0;  // drops the sign of -0
  if (!std::isfinite(value)) return value;
  return std::stod(format_number(value));
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

json state_to_json(const TwoQubitState& state) {
  const Matrix3 t = state.correlations();
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back(vec_to_json(t.row(i).transpose()));
  return {{"a", vec_to_json(state.alice_bloch())}, {"b", vec_to_json(state.bob_bloch())}, {"T", rows}};
}

Matrix3 correlations_from_json(const json& j) {
  if (!j.is_object() || !j.contains("T")) {
    throw Error(ErrorCode::InvalidArgument, "state JSON needs a \"T\" entry");
  }
  const json& tj = j.at("T");
  if (tj.is_string()) return diag_from_string(tj.get<std::string>());
  if (!tj.is_array() || tj.size() != 3) {
    throw Error(ErrorCode::InvalidArgument, "T must be a 3x3 array or diag(...) string");
  }
  Matrix3 t;
  for (int i = 0; i < 3; ++i) t.row(i) = vec_from_json(tj[i], "T row").transpose();
  return t;
}

TwoQubitState state_from_json(const json& j) {
  const Matrix3 t = correlations_from_json(j);
  const Vector3 a = j.contains("a") ? vec_from_json(j.at("a"), "a") : Vector3::Zero();
  const Vector3 b = j.contains("b") ? vec_from_json(j.at("b"), "b") : Vector3::Zero();
  return TwoQubitState::from_blocks(a, b, t);
}

json observable_to_json(const Observable& obs) {
  return {{"bias", round12(obs.bias())},
          {"strength", round12(obs.strength())},
          {"direction", vec_to_json(obs.direction())}};
}

Observable observable_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "observable must be an object");
  const double bias = j.value("bias", 0.0);
  const double strength = j.value("strength", 1.0);
  const Vector3 dir = j.contains("direction") ? vec_from_json(j.at("direction"), "direction")
                                              : Vector3::UnitZ();
  return Observable::make(bias, strength, dir);
}

json pair_to_json(const MeasurementPair& pair) {
  return json::array({observable_to_json(pair.first), observable_to_json(pair.second)});
}

MeasurementPair pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::InvalidArgument, "measurement pair must be an array of 2 observables");
  }
  return {observable_from_json(j[0]), observable_from_json(j[1])};
}

json config_to_json(const ScenarioConfig& cfg) {
  json kind;
  switch (cfg.kind.model) {
    case MeasurementModel::SquareRoot: kind = {{"model", "square-root"}}; break;
    case MeasurementModel::SimpleModel: kind = {{"model", "simple"}}; break;
    case MeasurementModel::WeakPointer:
      kind = {{"model", "weak-pointer"}, {"quality", round12(cfg.kind.quality)}};
      break;
  }
  return {{"state", state_to_json(cfg.state)},
          {"alice", pair_to_json(cfg.alice)},
          {"bob", pair_to_json(cfg.bob)},
          {"kind", kind}};
}

ScenarioConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "scenario must be an object");
  ScenarioConfig cfg;
  cfg.state = j.contains("state") ? state_from_json(j.at("state")) : singlet();
  cfg.alice = pair_from_json(j.at("alice"));
  cfg.bob = pair_from_json(j.at("bob"));
  if (j.contains("kind")) {
    const json& k = j.at("kind");
    const std::string model = k.value("model", "square-root");
    if (model == "square-root") {
      cfg.kind = MeasurementKind::square_root();
    } else if (model == "simple") {
      cfg.kind = MeasurementKind::simple_model();
    } else if (model == "weak-pointer") {
      cfg.kind = MeasurementKind::weak_pointer(k.value("quality", 0.0));
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown measurement model '" + model + "'");
    }
  }
  return cfg;
}

json result_to_json(const ScenarioResult& res) {
  return {{"s_first", round12(res.s_first)}, {"s_star_second", round12(res.s_star_second)}};
}

}  // namespace bellrecycle
