#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace gwimm {

/// Outcome of a registered verification check. `statistic` is always a
/// badness measure compared against `threshold`; `pass` may additionally
/// encode side conditions listed in `details`.
struct CheckReport {
  std::string check;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
  /// Wall-clock seconds per stage; kept out of `details` so reports stay
  /// byte-identical across runs.
  nlohmann::json timings = nlohmann::json::object();
};

struct CheckOptions {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  /// Per-check parameter overrides (e.g. {"replicates": 100}); unknown
  /// keys are ignored.
  nlohmann::json overrides = nlohmann::json::object();
};

/// marginal-limit, marginal-prelimit-thm1, marginal-prelimit-thm2, fdd,
/// lemma-aux2, lemma-aux2a, lemma-aux3, proxy-zn.
const std::vector<std::string>& check_names();

/// Runs a registered check. Throws std::invalid_argument for an unknown name.
CheckReport run_check(const std::string& name, const CheckOptions& options);

/// {check, statistic, threshold, pass, details}; timings are not included.
nlohmann::json to_json(const CheckReport& report);

}  // namespace gwimm
