#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwimm/random.hpp"

namespace gwimm {

/// Offspring law of a single individual. Every variant has a closed-form
/// m-fold convolution, so a whole cohort advances one generation in O(1).
class OffspringFamily {
 public:
  enum class Kind { poisson, binary, geometric };

  /// Poisson(mu), mu > 0.
  static OffspringFamily poisson(double mu);
  /// 0 or 2 children, P{2} = p with 0 < p < 1; mean 2p.
  static OffspringFamily binary(double p);
  /// P{X = k} = (1-q) q^k with q = mu / (1 + mu), mu > 0.
  static OffspringFamily geometric(double mu);
  /// Dispatch on a family name ("poisson" | "binary" | "geometric") with a
  /// common mean parametrization (binary: mean = 2p).
  static OffspringFamily from_mean(const std::string& name, double mean);

  Kind kind() const { return kind_; }
  std::string name() const;
  double mean() const;
  /// The variant's own parameter: mu, p or mu respectively.
  double parameter() const { return param_; }

  /// Probability generating function f(s).
  double pgf(double s) const;
  /// 1 - f(1 - x), evaluated without cancellation for small x.
  double complement_pgf(double x) const;

 private:
  OffspringFamily(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

/// Largest cohort size sample_generation accepts. Cohort counts are held in
/// exact integer arithmetic below this and as LogMagnitude above it.
inline constexpr std::uint64_t kMaxExactCohort = std::uint64_t{1} << 40;

/// Total offspring of m i.i.d. individuals: Poisson(m mu), 2 Binomial(m, p)
/// or NegativeBinomial(m, 1 - q). Throws std::domain_error for
/// m > kMaxExactCohort; such cohorts belong to the fluid regime.
std::uint64_t sample_generation(const OffspringFamily& family, std::uint64_t m, Stream& rng);

/// p_k = P{X(k) >= 1} for k = 1..n, starting from one ancestor. Iterates the
/// complement generating function so that p_k stays accurate long after
/// f_k(0) rounds to 1.
std::vector<double> survival_probability(const OffspringFamily& family, int n);

}  // namespace gwimm
