#include "gwimm/immigration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gwimm {

namespace {

double sv_tail(double x) { return std::log(std::numbers::e + x) / x; }

// Largest x with log(e + x) / x >= 1; the sv tail is 1 to its left.
double sv_plateau_end() {
  static const double x0 = [] {
    double lo = 1.0, hi = 2.0;  // sv_tail(1) > 1 > sv_tail(2)
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (sv_tail(mid) >= 1.0 ? lo : hi) = mid;
    }
    return lo;
  }();
  return x0;
}

// Solves sv_tail(x) = target for target in (0, 1) by bisection on log x.
// Stops after max_steps or once the bracket is narrower than log_width.
double invert_sv_tail(double target, int max_steps, double log_width) {
  double lo = std::log(sv_plateau_end());
  double step = 1.0;
  double hi = lo + step;
  while (sv_tail(std::exp(hi)) > target) {
    lo = hi;
    step *= 2.0;
    hi += step;
  }
  for (int i = 0; i < max_steps && hi - lo > log_width; ++i) {
    const double mid = 0.5 * (lo + hi);
    (sv_tail(std::exp(mid)) > target ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

ImmigrationLaw ImmigrationLaw::reciprocal(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("reciprocal immigration: c must be positive");
  return {Kind::reciprocal, c};
}

ImmigrationLaw ImmigrationLaw::pareto_log(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("pareto_log immigration: alpha must lie in (0, 1)");
  return {Kind::pareto_log, alpha};
}

ImmigrationLaw ImmigrationLaw::pareto_log_sv() { return {Kind::pareto_log_sv, 1.0}; }

std::string ImmigrationLaw::name() const {
  switch (kind_) {
    case Kind::reciprocal: return "reciprocal";
    case Kind::pareto_log: return "pareto_log";
    case Kind::pareto_log_sv: return "pareto_log_sv";
  }
  return {};
}

double ImmigrationLaw::tail_index() const { return kind_ == Kind::pareto_log ? param_ : 1.0; }

double tail(const ImmigrationLaw& law, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("tail: x must be >= 0");
  if (x == 0.0) return 1.0;
  switch (law.kind()) {
    case ImmigrationLaw::Kind::reciprocal: return std::min(1.0, law.parameter() / x);
    case ImmigrationLaw::Kind::pareto_log: return std::min(1.0, std::pow(x, -law.parameter()));
    case ImmigrationLaw::Kind::pareto_log_sv: return std::min(1.0, sv_tail(x));
  }
  return 1.0;
}

double inverse_tail(const ImmigrationLaw& law, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("inverse_tail: u must lie in (0, 1)");
  switch (law.kind()) {
    case ImmigrationLaw::Kind::reciprocal: return law.parameter() / u;
    case ImmigrationLaw::Kind::pareto_log: return std::pow(u, -1.0 / law.parameter());
    case ImmigrationLaw::Kind::pareto_log_sv: return invert_sv_tail(u, 50, 0.0);
  }
  return 0.0;
}

LogMagnitude log_j_from_uniform(const ImmigrationLaw& law, double u) {
  const double v = inverse_tail(law, u);
  // Below e^36 the floor is computed exactly in double; above it the floor
  // moves log J by less than e^-36, which is beneath double resolution of V.
  if (v < 36.0) {
    const double j = std::max(1.0, std::floor(std::exp(v)));
    return LogMagnitude::from_log(std::log(j));
  }
  return LogMagnitude::from_log(v);
}

LogMagnitude sample_log_j(const ImmigrationLaw& law, Stream& rng) {
  return log_j_from_uniform(law, rng.uniform_open());
}

double norming_bn(const ImmigrationLaw& law, long long n) {
  if (n < 1) throw std::invalid_argument("norming_bn: n must be >= 1");
  const double nn = static_cast<double>(n);
  switch (law.kind()) {
    case ImmigrationLaw::Kind::reciprocal: return law.parameter() * nn;
    case ImmigrationLaw::Kind::pareto_log: return std::pow(nn, 1.0 / law.parameter());
    case ImmigrationLaw::Kind::pareto_log_sv:
      if (n == 1) return sv_plateau_end();
      return invert_sv_tail(1.0 / nn, 400, 1e-13);
  }
  return 0.0;
}

}  // namespace gwimm
