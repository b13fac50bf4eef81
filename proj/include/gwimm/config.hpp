#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "gwimm/cohort.hpp"
#include "gwimm/immigration.hpp"
#include "gwimm/limit.hpp"
#include "gwimm/offspring.hpp"
#include "gwimm/process.hpp"

namespace gwimm {

/// Malformed or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"family": "poisson" | "binary" | "geometric", "mean": m}
OffspringFamily parse_offspring(const nlohmann::json& j);
nlohmann::json to_json(const OffspringFamily& family);

// {"variant": "reciprocal", "c": c} | {"variant": "pareto_log", "alpha": a} | {"variant": "pareto_log_sv"}
ImmigrationLaw parse_immigration(const nlohmann::json& j);
nlohmann::json to_json(const ImmigrationLaw& law);

// {"threshold": M, "refine_on_descent": bool}, both optional
FluidConfig parse_fluid(const nlohmann::json& j);
nlohmann::json to_json(const FluidConfig& config);

/// Run descriptor: {"n", "T", "offspring", "immigration", "fluid"?}. The seed
/// is supplied separately by the caller.
GwiRun parse_run(const nlohmann::json& j);
nlohmann::json to_json(const GwiRun& run);

/// {"a", "b", "T", "delta"}
PrmParams parse_prm(const nlohmann::json& j);

/// Reads and parses a JSON file; ConfigError on any failure.
nlohmann::json load_json_file(const std::string& path);

}  // namespace gwimm
