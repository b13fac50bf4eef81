#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gwimm/cohort.hpp"
#include "gwimm/immigration.hpp"
#include "gwimm/lognum.hpp"
#include "gwimm/offspring.hpp"
#include "gwimm/path.hpp"

namespace gwimm {

/// One Galton-Watson process with immigration observed on the integer
/// grid 0..[n T].
///
/// Randomness layout: Stream(seed, 0).substream(0) draws J_0, J_1, ... in
/// order and Stream(seed, 0).substream(k + 1) drives cohort k. Runs that
/// share a seed therefore share immigrants and cohort trajectories, which is
/// what couples Y, its truncation and Z.
struct GwiRun {
  int n = 1;
  double horizon = 1.0;
  OffspringFamily family = OffspringFamily::binary(0.5);
  ImmigrationLaw law = ImmigrationLaw::reciprocal(1.0);
  FluidConfig config{};
  std::uint64_t seed = 0;

  /// [n T]; throws std::invalid_argument unless n >= 1 and T >= 0.
  int steps() const;
};

/// log J_0 .. log J_[nT].
std::vector<LogMagnitude> draw_immigrants(const GwiRun& run);

/// Y_0 .. Y_[nT].
std::vector<LogMagnitude> simulate_y_path(const GwiRun& run);

/// Y_0 .. Y_[nT] with the batch sizes fixed to `immigrants` (one per time
/// step) instead of drawn from run.law.
std::vector<LogMagnitude> simulate_y_path(const GwiRun& run, std::span<const LogMagnitude> immigrants);

/// Y with every cohort whose log J_k exceeds gamma * c_n removed, coupled to
/// simulate_y_path(run). Requires 0 < gamma < 1 and c_n > 0.
std::vector<LogMagnitude> truncated_y_path(const GwiRun& run, double gamma, double c_n);

/// Z_m = sum_{k <= m} mu^(m-k) J_k, the conditional mean of Y_m given the
/// immigration sequence.
std::vector<LogMagnitude> conditional_mean_path(const GwiRun& run, std::span<const LogMagnitude> immigrants);

struct Truncation {
  double gamma;
  double c_n;
};

/// Y, optionally its truncation, and Z from a single pass over the cohorts.
struct CoupledPaths {
  std::vector<LogMagnitude> immigrants;
  std::vector<LogMagnitude> y;
  std::vector<LogMagnitude> y_truncated;  // empty unless requested
  std::vector<LogMagnitude> z;
};

CoupledPaths simulate_coupled(const GwiRun& run, std::optional<Truncation> truncation = std::nullopt);

/// t -> log+(values[[n t]] * mu^-[n t]) / norm when `supercritical_mu` is
/// set, otherwise t -> log+(values[[n t]]) / norm.
CadlagPath normalized_observable(std::span<const LogMagnitude> values, double norm, int n,
                                 std::optional<double> supercritical_mu = std::nullopt);

}  // namespace gwimm
