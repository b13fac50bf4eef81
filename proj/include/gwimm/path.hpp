#pragma once

#include <span>
#include <vector>

namespace gwimm {

/// Right-continuous piecewise-affine function on [0, end].
///
/// Segment i covers [start_i, start_{i+1}) (the last one [start_last, end])
/// and takes the value value_i + slope_i * (t - start_i) there. Left limits
/// exist everywhere; jumps happen only at segment starts.
class CadlagPath {
 public:
  struct Segment {
    double start;
    double value;  // value at start (right limit)
    double slope;
  };

  /// Throws std::invalid_argument unless starts are strictly increasing,
  /// the first start is 0 and end >= last start.
  CadlagPath(std::vector<Segment> segments, double end);

  /// Step function with value levels[k] on [k/n, (k+1)/n), domain [0, (K-1)/n].
  static CadlagPath lattice_steps(std::span<const double> levels, double n);
  /// Identically `level` on [0, end].
  static CadlagPath constant(double level, double end);

  double end() const { return end_; }
  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<double> breakpoints() const;

  /// f(t) for t in [0, end]; throws std::out_of_range outside.
  double value(double t) const;
  /// f(t-) for t in (0, end]; equals f(0) at t = 0.
  double left_limit(double t) const;

  /// Index of the segment containing t (largest start <= t).
  std::size_t segment_index(double t) const;

 private:
  std::vector<Segment> segments_;
  double end_;
};

}  // namespace gwimm
