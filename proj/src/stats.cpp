#include "gwimm/stats.hpp"

#include <limits>
#include <numeric>

namespace gwimm {

Sample::Sample(std::vector<double> values) : sorted_(std::move(values)) {
  for (double v : sorted_) {
    if (std::isnan(v)) throw std::invalid_argument("Sample: NaN value");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double Sample::mean() const {
  if (sorted_.empty()) throw std::invalid_argument("Sample::mean: empty sample");
  return std::accumulate(sorted_.begin(), sorted_.end(), 0.0) / static_cast<double>(sorted_.size());
}

double ecdf(const Sample& sample, double x) {
  if (sample.empty()) throw std::invalid_argument("ecdf: empty sample");
  const auto& xs = sample.sorted();
  const auto count = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  return static_cast<double>(count) / static_cast<double>(xs.size());
}

double dkw_band(std::size_t n, double confidence) {
  if (n == 0) throw std::invalid_argument("dkw_band: N must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("dkw_band: confidence must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

double uniform_distance(const CadlagPath& f, const CadlagPath& g, std::span<const double> grid) {
  if (f.end() != g.end()) throw std::invalid_argument("uniform_distance: paths have different domains");
  double worst = 0.0;
  auto probe = [&](double t) {
    worst = std::max({worst, std::abs(f.value(t) - g.value(t)), std::abs(f.left_limit(t) - g.left_limit(t))});
  };
  for (double t : grid) probe(t);
  for (const auto& s : f.segments()) probe(s.start);
  for (const auto& s : g.segments()) probe(s.start);
  probe(f.end());
  return worst;
}

namespace {

constexpr std::size_t kMaxBreakpoints = 10'000;
constexpr std::size_t kMaxDpStates = 4'000'000;
constexpr std::size_t kSkipWindow = 6;
constexpr int kLowerBoundGrid = 1000;

std::vector<double> knot_times(const CadlagPath& p) {
  auto t = p.breakpoints();
  if (t.back() < p.end()) t.push_back(p.end());
  return t;
}

// Cost of the linear time change taking [g0, g1] onto [f0, f1]:
// max(|l - id|, sup |f(l(t)) - g(t)|) over the piece, endpoints included.
double piece_cost(const CadlagPath& f, const CadlagPath& g, double f0, double f1, double g0, double g1) {
  const double stretch = (f1 - f0) / (g1 - g0);
  auto to_f = [&](double t) { return std::clamp(f0 + (t - g0) * stretch, f0, f1); };
  auto to_g = [&](double x) { return std::clamp(g0 + (x - f0) / stretch, g0, g1); };

  double cost = std::max(std::abs(f0 - g0), std::abs(f1 - g1));
  auto compare = [&](double x, double t) {
    cost = std::max({cost, std::abs(f.value(x) - g.value(t)), std::abs(f.left_limit(x) - g.left_limit(t))});
  };
  compare(f0, g0);
  compare(f1, g1);
  for (std::size_t k = g.segment_index(g0) + 1; k < g.segments().size() && g.segments()[k].start < g1; ++k) {
    const double t = g.segments()[k].start;
    compare(to_f(t), t);
  }
  for (std::size_t k = f.segment_index(f0) + 1; k < f.segments().size() && f.segments()[k].start < f1; ++k) {
    const double x = f.segments()[k].start;
    compare(x, to_g(x));
  }
  return cost;
}

// max over t of the distance from g(t) to f([t - w, t + w]).
double window_lower_bound(const CadlagPath& f, const CadlagPath& g, double w) {
  const double end = g.end();
  double best = 0.0;
  auto probe = [&](double t) {
    const double y = g.value(t);
    const double lo = std::max(0.0, t - w);
    const double hi = std::min(end, t + w);
    double nearest = std::numeric_limits<double>::infinity();
    const auto& segs = f.segments();
    for (std::size_t k = f.segment_index(lo); k < segs.size() && segs[k].start <= hi; ++k) {
      const double a = std::max(lo, segs[k].start);
      const double b = k + 1 < segs.size() ? std::min(hi, segs[k + 1].start) : hi;
      const double va = segs[k].value + segs[k].slope * (a - segs[k].start);
      const double vb = segs[k].value + segs[k].slope * (b - segs[k].start);
      const double vmin = std::min(va, vb), vmax = std::max(va, vb);
      nearest = std::min(nearest, y < vmin ? vmin - y : (y > vmax ? y - vmax : 0.0));
      if (nearest == 0.0) break;
    }
    best = std::max(best, nearest);
  };
  for (int i = 0; i <= kLowerBoundGrid; ++i) probe(end * i / kLowerBoundGrid);
  for (const auto& s : g.segments()) probe(s.start);
  return best;
}

}  // namespace

J1Bracket j1_distance_bracket(const CadlagPath& f, const CadlagPath& g) {
  if (f.segments().size() > kMaxBreakpoints || g.segments().size() > kMaxBreakpoints)
    throw std::invalid_argument("j1_distance_bracket: more than 10^4 breakpoints");
  if (f.end() != g.end()) throw std::invalid_argument("j1_distance_bracket: paths have different domains");
  const double end = f.end();

  double upper = end > 0.0 ? piece_cost(f, g, 0.0, end, 0.0, end) : std::abs(f.value(0.0) - g.value(0.0));

  const auto fa = knot_times(f);
  const auto gb = knot_times(g);
  const std::size_t p = fa.size(), q = gb.size();
  if (end > 0.0 && p > 2 && q > 2 && p * q <= kMaxDpStates) {
    // best[i][j]: smallest achievable cost up to the knot pairing fa[i] <-> gb[j].
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best(p * q, inf);
    best[0] = 0.0;
    for (std::size_t i = 0; i + 1 < p; ++i) {
      for (std::size_t j = 0; j + 1 < q; ++j) {
        const double here = best[i * q + j];
        if (!(here < upper)) continue;
        if (i > 0 && j > 0) {
          upper = std::min(upper, std::max(here, piece_cost(f, g, fa[i], end, gb[j], end)));
        }
        for (std::size_t i2 = i + 1; i2 < std::min(p - 1, i + 1 + kSkipWindow); ++i2) {
          for (std::size_t j2 = j + 1; j2 < std::min(q - 1, j + 1 + kSkipWindow); ++j2) {
            if (std::abs(fa[i2] - gb[j2]) >= upper) continue;
            const double c = std::max(here, piece_cost(f, g, fa[i], fa[i2], gb[j], gb[j2]));
            auto& slot = best[i2 * q + j2];
            slot = std::min(slot, c);
          }
        }
      }
    }
  }

  double lower = std::max(std::abs(f.value(0.0) - g.value(0.0)), std::abs(f.value(end) - g.value(end)));
  lower = std::max(lower, std::min(upper, window_lower_bound(f, g, upper)));
  return {std::min(lower, upper), upper};
}

}  // namespace gwimm
