#pragma once

#include <cstdint>
#include <vector>

#include "gwimm/lognum.hpp"
#include "gwimm/offspring.hpp"
#include "gwimm/path.hpp"
#include "gwimm/random.hpp"

namespace gwimm {

/// Switch between exact convolution sampling and deterministic mean growth.
struct FluidConfig {
  /// Cohorts with count <= threshold are sampled exactly.
  std::uint64_t threshold = 1'000'000;
  /// Re-enter the exact regime when a fluid cohort shrinks to the threshold.
  bool refine_on_descent = true;

  /// Throws std::invalid_argument unless 10^3 <= threshold <= kMaxExactCohort.
  void validate() const;
};

enum class Regime : std::uint8_t { exact, fluid };

/// Total size of one cohort at generations 0..G.
///
/// regime[g] tells how values[g] is held: exact means values[g] is an
/// integer count <= threshold and the next generation is sampled; fluid
/// means the next generation is values[g] * mu.
struct PopulationPath {
  std::vector<LogMagnitude> values;
  std::vector<Regime> regime;

  std::size_t generations() const { return values.empty() ? 0 : values.size() - 1; }
};

/// Simulates sum_{i <= initial} X_i(g) for g = 0..generations.
PopulationPath simulate_cohort(const OffspringFamily& family, LogMagnitude initial, int generations,
                               const FluidConfig& config, Stream& rng);

/// Step function t -> log+(values[floor(n t)]) / scale on [0, G/n].
CadlagPath normalized_log_path(const PopulationPath& path, double scale, int n);

/// (a + t log mu)^+, the log-scale growth profile of a cohort of size e^(a n).
double limit_profile(double a, double mu, double t);

}  // namespace gwimm
