#pragma once

#include <span>
#include <vector>

#include "gwimm/path.hpp"
#include "gwimm/random.hpp"

namespace gwimm {

/// Poisson random measure on [0, T] x (delta, inf] with intensity
/// Lebesgue x mu_{a,b}, mu_{a,b}((x, inf]) = a x^-b.
struct PrmParams {
  double a = 1.0;
  double b = 1.0;
  double horizon = 1.0;
  double delta = 1e-3;

  /// Throws std::invalid_argument unless a, b, delta > 0 and T >= 0 (all finite).
  void validate() const;
  /// T a delta^-b.
  double expected_count() const;
};

struct Atom {
  double time;
  double mark;
};

struct AtomSet {
  std::vector<Atom> atoms;
  PrmParams params;
};

/// Extremal shot noise t -> sup_{t_k <= t} (j_k + (t - t_k) slope).
struct ShotNoiseSpec {
  double slope = 0.0;
  AtomSet atoms;
};

/// Atoms with marks above params.delta: Poisson count, uniform times, and
/// marks delta U^(-1/b).
AtomSet sample_atoms(const PrmParams& params, Stream& rng);

/// The independent layer of atoms with marks in (lower_delta, params.delta].
/// Adding it to sample_atoms(params) yields a sample at truncation lower_delta.
AtomSet sample_refinement_layer(const PrmParams& params, double lower_delta, Stream& rng);

/// Value of the shot noise at t, floored at 0 (slope <= 0) or at t slope
/// (slope > 0). Differs from the untruncated process by at most delta.
double shot_noise_value(const ShotNoiseSpec& spec, double t);

/// Exact piecewise-affine path on [0, grid.back()]. Breakpoints are the
/// leader-changing atom times, the times the decaying envelope reaches 0,
/// and the grid points. The grid must be increasing and inside [0, T].
CadlagPath shot_noise_path(const ShotNoiseSpec& spec, std::span<const double> grid);

/// P{sup_{t_k <= u} (j_k - s (u - t_k)) <= x} = (x / (x + s u))^(r/s) for the
/// measure with intensity r y^-2 dy dt; decaying slope -s, s > 0.
double marginal_cdf_negslope(double r, double s, double u, double x);

/// P{sup_{t_k <= u} j_k <= x} = exp(-u a x^-b), x > 0.
double marginal_cdf_extremal(double a, double b, double u, double x);

/// P{sup_{t_k <= u} (j_k + s (u - t_k)) <= x} = ((x - u s) / x)^(r/s) for
/// x > u s and 0 otherwise; growing slope s > 0.
double marginal_cdf_posslope(double r, double s, double u, double x);

/// Joint P{X(u_i) <= x_i for all i} for the shot noise with slope s driven
/// by the untruncated measure with parameters (a, b), computed as the void
/// probability exp(-Lambda(A)) by adaptive quadrature.
/// Requires strictly increasing times >= 0 and x_i > max(0, s u_i);
/// throws std::invalid_argument when Lambda would be infinite.
double fdd_cdf(double a, double b, double slope, std::span<const double> times,
               std::span<const double> thresholds);

}  // namespace gwimm
