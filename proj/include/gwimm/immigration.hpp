#pragma once

#include <string>

#include "gwimm/lognum.hpp"
#include "gwimm/random.hpp"

namespace gwimm {

/// Law of the immigration batch size J, specified through the exact tail of
/// log J. All variants have E log+ J = infinity.
///
///   reciprocal(c):   P{log J > x} = min(1, c / x)
///   pareto_log(a):   P{log J > x} = min(1, x^-a),            0 < a < 1
///   pareto_log_sv:   P{log J > x} = min(1, log(e + x) / x)   (a = 1, l -> inf)
class ImmigrationLaw {
 public:
  enum class Kind { reciprocal, pareto_log, pareto_log_sv };

  static ImmigrationLaw reciprocal(double c);
  static ImmigrationLaw pareto_log(double alpha);
  static ImmigrationLaw pareto_log_sv();

  Kind kind() const { return kind_; }
  std::string name() const;
  /// c for reciprocal, alpha for pareto_log, 1 for pareto_log_sv.
  double parameter() const { return param_; }
  /// Tail index alpha of log J (1 for reciprocal and pareto_log_sv).
  double tail_index() const;

 private:
  ImmigrationLaw(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

/// P{log J > x} for x >= 0 (exact, not just the asymptote).
double tail(const ImmigrationLaw& law, double x);

/// Generalized inverse of the tail at u in (0, 1): the V with tail(V) = u.
/// Closed form for reciprocal and pareto_log; 50 bisection steps on log V
/// for pareto_log_sv.
double inverse_tail(const ImmigrationLaw& law, double u);

/// log J with J = max(1, floor(e^V)) and V = inverse_tail(law, u).
LogMagnitude log_j_from_uniform(const ImmigrationLaw& law, double u);

/// One draw of log J.
LogMagnitude sample_log_j(const ImmigrationLaw& law, Stream& rng);

/// Solution b of n * tail(law, b) = 1 (b = c n, b = n^(1/alpha), or bisection
/// to relative tolerance 1e-12).
double norming_bn(const ImmigrationLaw& law, long long n);

}  // namespace gwimm
