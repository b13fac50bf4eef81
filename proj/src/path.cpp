#include "gwimm/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gwimm {

CadlagPath::CadlagPath(std::vector<Segment> segments, double end)
    : segments_(std::move(segments)), end_(end) {
  if (segments_.empty() || segments_.front().start != 0.0)
    throw std::invalid_argument("CadlagPath: first breakpoint must be 0");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (!(segments_[i].start > segments_[i - 1].start))
      throw std::invalid_argument("CadlagPath: breakpoints must be strictly increasing");
  }
  if (!(end_ >= segments_.back().start) || !std::isfinite(end_))
    throw std::invalid_argument("CadlagPath: end precedes the last breakpoint");
}

CadlagPath CadlagPath::lattice_steps(std::span<const double> levels, double n) {
  if (levels.empty()) throw std::invalid_argument("lattice_steps: no levels");
  if (!(n > 0.0)) throw std::invalid_argument("lattice_steps: lattice density must be positive");
  std::vector<Segment> segments;
  segments.reserve(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    segments.push_back({static_cast<double>(k) / n, levels[k], 0.0});
  }
  return CadlagPath(std::move(segments), static_cast<double>(levels.size() - 1) / n);
}

CadlagPath CadlagPath::constant(double level, double end) { return CadlagPath({{0.0, level, 0.0}}, end); }

std::vector<double> CadlagPath::breakpoints() const {
  std::vector<double> out;
  out.reserve(segments_.size());
  for (const auto& s : segments_) out.push_back(s.start);
  return out;
}

std::size_t CadlagPath::segment_index(double t) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double x, const Segment& s) { return x < s.start; });
  return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

double CadlagPath::value(double t) const {
  if (!(t >= 0.0 && t <= end_)) throw std::out_of_range("CadlagPath::value: t outside [0, end]");
  const auto& s = segments_[segment_index(t)];
  return s.value + s.slope * (t - s.start);
}

double CadlagPath::left_limit(double t) const {
  if (!(t >= 0.0 && t <= end_)) throw std::out_of_range("CadlagPath::left_limit: t outside [0, end]");
  if (t == 0.0) return segments_.front().value;
  auto i = segment_index(t);
  if (segments_[i].start == t) --i;
  const auto& s = segments_[i];
  return s.value + s.slope * (t - s.start);
}

}  // namespace gwimm
