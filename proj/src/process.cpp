#include "gwimm/process.hpp"

#include <cmath>
#include <stdexcept>

namespace gwimm {

int GwiRun::steps() const {
  if (n < 1) throw std::invalid_argument("GwiRun: n must be >= 1");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("GwiRun: horizon must be >= 0");
  // Absorb representation error in n * T (e.g. 3 * 0.1) before flooring.
  return static_cast<int>(std::floor(n * horizon * (1.0 + 1e-12)));
}

namespace {

Stream run_stream(const GwiRun& run) { return Stream(run.seed, 0); }

void check_truncation(const Truncation& t) {
  if (!(t.gamma > 0.0 && t.gamma < 1.0)) throw std::invalid_argument("truncation: gamma must lie in (0, 1)");
  if (!(t.c_n > 0.0)) throw std::invalid_argument("truncation: c_n must be positive");
}

// Cohort-major accumulation in ascending k.
void accumulate_cohorts(const GwiRun& run, std::span<const LogMagnitude> immigrants,
                        const std::optional<Truncation>& truncation, std::vector<LogMagnitude>& y,
                        std::vector<LogMagnitude>* y_truncated) {
  const int steps = run.steps();
  if (immigrants.size() != static_cast<std::size_t>(steps) + 1)
    throw std::invalid_argument("immigrant sequence length must equal [nT] + 1");
  y.assign(immigrants.size(), LogMagnitude::zero());
  if (y_truncated != nullptr) y_truncated->assign(immigrants.size(), LogMagnitude::zero());

  const Stream root = run_stream(run);
  for (int k = 0; k <= steps; ++k) {
    Stream rng = root.substream(static_cast<std::uint64_t>(k) + 1);
    const auto cohort = simulate_cohort(run.family, immigrants[k], steps - k, run.config, rng);
    const bool kept = truncation.has_value() && log_plus(immigrants[k]) <= truncation->gamma * truncation->c_n;
    for (int m = k; m <= steps; ++m) {
      const auto& v = cohort.values[m - k];
      if (v.is_zero()) break;  // extinction is absorbing
      y[m] = lse_add(y[m], v);
      if (y_truncated != nullptr && kept) (*y_truncated)[m] = lse_add((*y_truncated)[m], v);
    }
  }
}

}  // namespace

std::vector<LogMagnitude> draw_immigrants(const GwiRun& run) {
  const int steps = run.steps();
  Stream rng = run_stream(run).substream(0);
  std::vector<LogMagnitude> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) out.push_back(sample_log_j(run.law, rng));
  return out;
}

std::vector<LogMagnitude> simulate_y_path(const GwiRun& run) {
  const auto immigrants = draw_immigrants(run);
  return simulate_y_path(run, immigrants);
}

std::vector<LogMagnitude> simulate_y_path(const GwiRun& run, std::span<const LogMagnitude> immigrants) {
  std::vector<LogMagnitude> y;
  accumulate_cohorts(run, immigrants, std::nullopt, y, nullptr);
  return y;
}

std::vector<LogMagnitude> truncated_y_path(const GwiRun& run, double gamma, double c_n) {
  const Truncation truncation{gamma, c_n};
  check_truncation(truncation);
  const auto immigrants = draw_immigrants(run);
  std::vector<LogMagnitude> y, y_truncated;
  accumulate_cohorts(run, immigrants, truncation, y, &y_truncated);
  return y_truncated;
}

std::vector<LogMagnitude> conditional_mean_path(const GwiRun& run, std::span<const LogMagnitude> immigrants) {
  const double mu = run.family.mean();
  std::vector<LogMagnitude> z(immigrants.size(), LogMagnitude::zero());
  for (std::size_t m = 0; m < immigrants.size(); ++m) {
    for (std::size_t k = 0; k <= m; ++k) {
      z[m] = lse_add(z[m], scale_pow(immigrants[k], mu, static_cast<std::int64_t>(m - k)));
    }
  }
  return z;
}

CoupledPaths simulate_coupled(const GwiRun& run, std::optional<Truncation> truncation) {
  if (truncation) check_truncation(*truncation);
  CoupledPaths out;
  out.immigrants = draw_immigrants(run);
  accumulate_cohorts(run, out.immigrants, truncation, out.y, truncation ? &out.y_truncated : nullptr);
  out.z = conditional_mean_path(run, out.immigrants);
  return out;
}

CadlagPath normalized_observable(std::span<const LogMagnitude> values, double norm, int n,
                                 std::optional<double> supercritical_mu) {
  if (!(norm > 0.0)) throw std::invalid_argument("normalized_observable: norm must be positive");
  if (n < 1) throw std::invalid_argument("normalized_observable: n must be >= 1");
  if (supercritical_mu && !(*supercritical_mu > 0.0))
    throw std::invalid_argument("normalized_observable: mu must be positive");
  std::vector<double> levels;
  levels.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    auto v = values[k];
    if (supercritical_mu) v = scale_pow(v, *supercritical_mu, -static_cast<std::int64_t>(k));
    levels.push_back(log_plus(v) / norm);
  }
  return CadlagPath::lattice_steps(levels, n);
}

}  // namespace gwimm
