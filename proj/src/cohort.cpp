#include "gwimm/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gwimm {

void FluidConfig::validate() const {
  if (threshold < 1000) throw std::invalid_argument("fluid threshold must be >= 1000");
  if (threshold > kMaxExactCohort) throw std::invalid_argument("fluid threshold exceeds the exact sampling limit");
}

namespace {

// Nearest integer, ties to even (the default floating-point rounding mode).
std::uint64_t round_count(LogMagnitude v) {
  if (v.is_zero()) return 0;
  return static_cast<std::uint64_t>(std::nearbyint(std::exp(v.log_value())));
}

}  // namespace

PopulationPath simulate_cohort(const OffspringFamily& family, LogMagnitude initial, int generations,
                               const FluidConfig& config, Stream& rng) {
  if (generations < 0) throw std::invalid_argument("simulate_cohort: negative generation count");
  config.validate();

  const auto size = static_cast<std::size_t>(generations) + 1;
  PopulationPath path;
  path.values.reserve(size);
  path.regime.reserve(size);

  const double threshold = static_cast<double>(config.threshold);
  const double log_threshold = std::log(threshold);
  const double mu = family.mean();

  bool exact = initial.is_zero() || initial.log_value() <= log_threshold;
  std::uint64_t count = exact ? round_count(initial) : 0;
  LogMagnitude current = exact ? LogMagnitude::from_count(count) : initial;

  for (std::size_t g = 0; g < size; ++g) {
    path.values.push_back(current);
    path.regime.push_back(exact ? Regime::exact : Regime::fluid);
    if (g + 1 == size) break;

    if (exact) {
      if (count == 0) {
        // Extinction is absorbing.
        path.values.resize(size, LogMagnitude::zero());
        path.regime.resize(size, Regime::exact);
        break;
      }
      count = sample_generation(family, count, rng);
      current = LogMagnitude::from_count(count);
      exact = count <= config.threshold;
    } else {
      current = scale_pow(current, mu, 1);
      if (config.refine_on_descent && current.log_value() <= log_threshold) {
        count = round_count(current);
        current = LogMagnitude::from_count(count);
        exact = true;
      }
    }
  }
  return path;
}

CadlagPath normalized_log_path(const PopulationPath& path, double scale, int n) {
  if (!(scale > 0.0)) throw std::invalid_argument("normalized_log_path: scale must be positive");
  if (n < 1) throw std::invalid_argument("normalized_log_path: n must be >= 1");
  std::vector<double> levels;
  levels.reserve(path.values.size());
  for (const auto& v : path.values) levels.push_back(log_plus(v) / scale);
  return CadlagPath::lattice_steps(levels, n);
}

double limit_profile(double a, double mu, double t) {
  if (!(a > 0.0) || !(mu > 0.0)) throw std::invalid_argument("limit_profile: a and mu must be positive");
  return std::max(a + t * std::log(mu), 0.0);
}

}  // namespace gwimm
