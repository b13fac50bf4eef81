#include "gwimm/limit.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace gwimm {

void PrmParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("PrmParams: a must be positive");
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("PrmParams: b must be positive");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("PrmParams: T must be >= 0");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("PrmParams: delta must be positive (infinite intensity otherwise)");
}

double PrmParams::expected_count() const { return horizon * a * std::pow(delta, -b); }

namespace {

long long poisson_count(double mean, Stream& rng) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<long long> dist(mean);
  return dist(rng);
}

}  // namespace

AtomSet sample_atoms(const PrmParams& params, Stream& rng) {
  params.validate();
  AtomSet out{{}, params};
  const long long count = poisson_count(params.expected_count(), rng);
  out.atoms.reserve(static_cast<std::size_t>(count));
  const double inv_b = 1.0 / params.b;
  for (long long i = 0; i < count; ++i) {
    const double t = params.horizon * rng.uniform();
    const double j = params.delta * std::pow(rng.uniform_open(), -inv_b);
    out.atoms.push_back({t, j});
  }
  return out;
}

AtomSet sample_refinement_layer(const PrmParams& params, double lower_delta, Stream& rng) {
  params.validate();
  if (!(lower_delta > 0.0 && lower_delta < params.delta))
    throw std::invalid_argument("refinement layer: lower_delta must lie in (0, delta)");
  PrmParams layer = params;
  layer.delta = lower_delta;
  AtomSet out{{}, layer};
  // Tail mass of the layer: a (lower^-b - delta^-b) per unit time.
  const double upper_tail = std::pow(params.delta, -params.b);
  const double lower_tail = std::pow(lower_delta, -params.b);
  const long long count = poisson_count(params.horizon * params.a * (lower_tail - upper_tail), rng);
  out.atoms.reserve(static_cast<std::size_t>(count));
  const double inv_b = 1.0 / params.b;
  for (long long i = 0; i < count; ++i) {
    const double t = params.horizon * rng.uniform();
    const double j = std::pow(upper_tail + rng.uniform_open() * (lower_tail - upper_tail), -inv_b);
    out.atoms.push_back({t, std::min(j, params.delta)});
  }
  return out;
}

double shot_noise_value(const ShotNoiseSpec& spec, double t) {
  if (!(t >= 0.0 && t <= spec.atoms.params.horizon)) throw std::out_of_range("shot_noise_value: t outside [0, T]");
  const double s = spec.slope;
  double best = s > 0.0 ? t * s : 0.0;
  for (const auto& atom : spec.atoms.atoms) {
    if (atom.time <= t) best = std::max(best, atom.mark + (t - atom.time) * s);
  }
  return best;
}

CadlagPath shot_noise_path(const ShotNoiseSpec& spec, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("shot_noise_path: empty grid");
  const double horizon = spec.atoms.params.horizon;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= horizon)) throw std::invalid_argument("shot_noise_path: grid outside [0, T]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("shot_noise_path: grid must be increasing");
  }
  const double end = grid.back();
  const double s = spec.slope;

  std::vector<Atom> atoms;
  for (const auto& a : spec.atoms.atoms) {
    if (a.time <= end) atoms.push_back(a);
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.time < y.time; });

  // Every atom line has slope s, so the running sup is one line L + s t
  // (the leader), floored at 0 when s <= 0. For s > 0 the floor t s is the
  // line with intercept 0.
  double lead = s > 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  auto level = [&](double t) { return s > 0.0 ? lead + s * t : std::max(0.0, lead + s * t); };
  auto rate = [&](double t) { return (s < 0.0 && !(lead + s * t > 0.0)) ? 0.0 : s; };

  std::vector<CadlagPath::Segment> segments;
  auto emit = [&](double t) {
    if (!segments.empty() && segments.back().start == t) {
      segments.back() = {t, level(t), rate(t)};
    } else {
      segments.push_back({t, level(t), rate(t)});
    }
  };
  // A decaying envelope hits 0 at -lead / s; that is a breakpoint.
  auto emit_zero_crossing_before = [&](double t) {
    if (s < 0.0 && std::isfinite(lead) && lead > 0.0) {
      const double hit = -lead / s;
      if (hit > segments.back().start && hit < t) segments.push_back({hit, 0.0, 0.0});
    }
  };

  emit(0.0);
  std::size_t a = 0, g = 0;
  while (a < atoms.size() || g < grid.size()) {
    const double t = (g == grid.size() || (a < atoms.size() && atoms[a].time <= grid[g])) ? atoms[a].time : grid[g];
    emit_zero_crossing_before(t);
    const double before = level(t);
    bool jumped = false;
    while (a < atoms.size() && atoms[a].time == t) {
      const double intercept = atoms[a].mark - s * atoms[a].time;
      if (atoms[a].mark > before && intercept > lead) {
        lead = intercept;
        jumped = true;
      }
      ++a;
    }
    const bool on_grid = g < grid.size() && grid[g] == t;
    if (on_grid) ++g;
    if (jumped || on_grid) emit(t);
  }
  emit_zero_crossing_before(end);
  return CadlagPath(std::move(segments), end);
}

double marginal_cdf_negslope(double r, double s, double u, double x) {
  if (!(r > 0.0) || !(s > 0.0)) throw std::invalid_argument("marginal_cdf_negslope: r and s must be positive");
  if (!(x >= 0.0) || !(u >= 0.0)) throw std::invalid_argument("marginal_cdf_negslope: x and u must be >= 0");
  if (u == 0.0) return 1.0;
  if (x == 0.0) return 0.0;
  if (s < 1e-8) return std::exp(-r * u / x);
  return std::exp(-(r / s) * std::log1p(s * u / x));
}

double marginal_cdf_extremal(double a, double b, double u, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("marginal_cdf_extremal: x must be positive");
  if (!(u >= 0.0)) throw std::invalid_argument("marginal_cdf_extremal: u must be >= 0");
  if (u == 0.0) return 1.0;
  return std::exp(-u * a * std::pow(x, -b));
}

double marginal_cdf_posslope(double r, double s, double u, double x) {
  if (!(r > 0.0) || !(s > 0.0)) throw std::invalid_argument("marginal_cdf_posslope: r and s must be positive");
  if (!(x >= 0.0) || !(u >= 0.0)) throw std::invalid_argument("marginal_cdf_posslope: x and u must be >= 0");
  if (u == 0.0) return 1.0;
  if (x <= u * s) return 0.0;
  return std::exp((r / s) * std::log1p(-u * s / x));
}

double fdd_cdf(double a, double b, double slope, std::span<const double> times,
               std::span<const double> thresholds) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("fdd_cdf: a and b must be positive");
  if (times.empty() || times.size() != thresholds.size())
    throw std::invalid_argument("fdd_cdf: need matching, nonempty times and thresholds");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && !(times[i] > times[i - 1])))
      throw std::invalid_argument("fdd_cdf: times must be >= 0 and strictly increasing");
    // The envelope x_i - s (u_i - t) must stay positive on [0, u_i].
    if (!(thresholds[i] > std::max(0.0, slope * times[i])))
      throw std::invalid_argument("fdd_cdf: threshold configuration has infinite intensity");
  }

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double lambda = 0.0;
  double piece_start = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double piece_end = times[j];
    if (piece_end > piece_start) {
      // On (u_{j-1}, u_j] the windows i >= j are active. The lines
      // h_i(t) = (x_i - s u_i) + s t are parallel, so the lower envelope is
      // the single line with the smallest intercept.
      double intercept = std::numeric_limits<double>::infinity();
      for (std::size_t i = j; i < times.size(); ++i) intercept = std::min(intercept, thresholds[i] - slope * times[i]);
      auto density = [&](double t) { return a * std::pow(intercept + slope * t, -b); };
      double error = 0.0;
      lambda += Quadrature::integrate(density, piece_start, piece_end, 15, 1e-13, &error);
    }
    piece_start = piece_end;
  }
  return std::exp(-lambda);
}

}  // namespace gwimm
