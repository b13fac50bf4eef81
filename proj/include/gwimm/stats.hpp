#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "gwimm/path.hpp"

namespace gwimm {

/// A finite sample, kept sorted.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::size_t size() const { return sorted_.size(); }
  bool empty() const { return sorted_.empty(); }
  const std::vector<double>& sorted() const { return sorted_; }
  double mean() const;

 private:
  std::vector<double> sorted_;
};

/// Fraction of the sample <= x. Throws std::invalid_argument on an empty sample.
double ecdf(const Sample& sample, double x);

/// One-sample Kolmogorov-Smirnov statistic sup |F_hat - F|, evaluated at
/// both sides of every jump of F_hat. `cdf` must be nondecreasing.
template <class Cdf>
double ks_distance(const Sample& sample, Cdf&& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  const auto& xs = sample.sorted();
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;  // ties share one jump
    const double f = cdf(xs[i]);
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    worst = std::max({worst, std::abs(at - f), std::abs(below - f)});
    i = j;
  }
  return worst;
}

/// sqrt(ln(2 / (1 - confidence)) / (2 N)): the DKW half-width.
double dkw_band(std::size_t n, double confidence);

/// max |f - g| over grid, breakpoints of both paths and the left limits
/// there. Throws std::invalid_argument when the domains differ.
double uniform_distance(const CadlagPath& f, const CadlagPath& g, std::span<const double> grid = {});

struct J1Bracket {
  double lower;
  double upper;
};

/// Certified bracket on the Skorokhod J1 distance sup-norm version:
/// inf over time changes l of max(|l - id|, |f o l - g|).
///
/// The upper bound is the best piecewise-linear time change that matches an
/// increasing subsequence of f-breakpoints to g-breakpoints (dynamic program
/// over breakpoint pairs, the identity included). The lower bound uses that
/// any admissible l moves each t by less than the upper bound.
/// Throws std::invalid_argument for paths with more than 10^4 breakpoints.
J1Bracket j1_distance_bracket(const CadlagPath& f, const CadlagPath& g);

}  // namespace gwimm
