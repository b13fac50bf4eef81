#include "gwimm/config.hpp"

#include <fstream>
#include <sstream>

namespace gwimm {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::string text(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string()) throw ConfigError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

template <class Fn>
auto rethrow_as_config(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

OffspringFamily parse_offspring(const json& j) {
  const auto family = text(j, "family");
  const double mean = number(j, "mean");
  return rethrow_as_config([&] { return OffspringFamily::from_mean(family, mean); });
}

json to_json(const OffspringFamily& family) { return {{"family", family.name()}, {"mean", family.mean()}}; }

ImmigrationLaw parse_immigration(const json& j) {
  const auto variant = text(j, "variant");
  return rethrow_as_config([&] {
    if (variant == "reciprocal") return ImmigrationLaw::reciprocal(number(j, "c"));
    if (variant == "pareto_log") return ImmigrationLaw::pareto_log(number(j, "alpha"));
    if (variant == "pareto_log_sv") return ImmigrationLaw::pareto_log_sv();
    throw ConfigError("unknown immigration variant '" + variant + "'");
  });
}

json to_json(const ImmigrationLaw& law) {
  switch (law.kind()) {
    case ImmigrationLaw::Kind::reciprocal: return {{"variant", law.name()}, {"c", law.parameter()}};
    case ImmigrationLaw::Kind::pareto_log: return {{"variant", law.name()}, {"alpha", law.parameter()}};
    case ImmigrationLaw::Kind::pareto_log_sv: return {{"variant", law.name()}};
  }
  return {};
}

FluidConfig parse_fluid(const json& j) {
  FluidConfig config;
  if (j.is_null()) return config;
  if (!j.is_object()) throw ConfigError("'fluid' must be an object");
  if (j.contains("threshold")) {
    const auto& t = j.at("threshold");
    if (!t.is_number_integer() || t.get<long long>() < 0) throw ConfigError("'fluid.threshold' must be a positive integer");
    config.threshold = t.get<std::uint64_t>();
  }
  if (j.contains("refine_on_descent")) {
    if (!j.at("refine_on_descent").is_boolean()) throw ConfigError("'fluid.refine_on_descent' must be a boolean");
    config.refine_on_descent = j.at("refine_on_descent").get<bool>();
  }
  rethrow_as_config([&] {
    config.validate();
    return 0;
  });
  return config;
}

json to_json(const FluidConfig& config) {
  return {{"threshold", config.threshold}, {"refine_on_descent", config.refine_on_descent}};
}

GwiRun parse_run(const json& j) {
  GwiRun run;
  const auto& n = require(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) throw ConfigError("'n' must be a positive integer");
  run.n = n.get<int>();
  run.horizon = number(j, "T");
  if (!(run.horizon > 0.0)) throw ConfigError("'T' must be positive");
  run.family = parse_offspring(require(j, "offspring"));
  run.law = parse_immigration(require(j, "immigration"));
  run.config = parse_fluid(j.contains("fluid") ? j.at("fluid") : json());
  return run;
}

json to_json(const GwiRun& run) {
  return {{"n", run.n},
          {"T", run.horizon},
          {"offspring", to_json(run.family)},
          {"immigration", to_json(run.law)},
          {"fluid", to_json(run.config)}};
}

PrmParams parse_prm(const json& j) {
  PrmParams p;
  p.a = number(j, "a");
  p.b = number(j, "b");
  p.horizon = number(j, "T");
  p.delta = number(j, "delta");
  return rethrow_as_config([&] {
    p.validate();
    return p;
  });
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace gwimm
