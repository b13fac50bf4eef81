#include "gwimm/offspring.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gwimm {

OffspringFamily OffspringFamily::poisson(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("poisson offspring: mean must be positive");
  return {Kind::poisson, mu};
}

OffspringFamily OffspringFamily::binary(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("binary offspring: p must lie in (0, 1)");
  return {Kind::binary, p};
}

OffspringFamily OffspringFamily::geometric(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("geometric offspring: mean must be positive");
  return {Kind::geometric, mu};
}

OffspringFamily OffspringFamily::from_mean(const std::string& name, double mean) {
  if (name == "poisson") return poisson(mean);
  if (name == "binary") return binary(mean / 2.0);
  if (name == "geometric") return geometric(mean);
  throw std::invalid_argument("unknown offspring family '" + name + "'");
}

std::string OffspringFamily::name() const {
  switch (kind_) {
    case Kind::poisson: return "poisson";
    case Kind::binary: return "binary";
    case Kind::geometric: return "geometric";
  }
  return {};
}

double OffspringFamily::mean() const { return kind_ == Kind::binary ? 2.0 * param_ : param_; }

double OffspringFamily::pgf(double s) const {
  switch (kind_) {
    case Kind::poisson: return std::exp(param_ * (s - 1.0));
    case Kind::binary: return 1.0 - param_ + param_ * s * s;
    case Kind::geometric: {
      const double q = param_ / (1.0 + param_);
      return (1.0 - q) / (1.0 - q * s);
    }
  }
  return 0.0;
}

double OffspringFamily::complement_pgf(double x) const {
  switch (kind_) {
    case Kind::poisson: return -std::expm1(-param_ * x);
    case Kind::binary: return param_ * x * (2.0 - x);
    case Kind::geometric: {
      const double q = param_ / (1.0 + param_);
      return q * x / (1.0 - q + q * x);
    }
  }
  return 0.0;
}

std::uint64_t sample_generation(const OffspringFamily& family, std::uint64_t m, Stream& rng) {
  if (m > kMaxExactCohort) throw std::domain_error("sample_generation: cohort above exactness limit");
  if (m == 0) return 0;
  using count_t = unsigned long long;
  switch (family.kind()) {
    case OffspringFamily::Kind::poisson: {
      std::poisson_distribution<count_t> dist(static_cast<double>(m) * family.parameter());
      return dist(rng);
    }
    case OffspringFamily::Kind::binary: {
      std::binomial_distribution<count_t> dist(m, family.parameter());
      return 2 * dist(rng);
    }
    case OffspringFamily::Kind::geometric: {
      // Failures before the m-th success with success probability 1 - q = 1/(1 + mu).
      std::negative_binomial_distribution<count_t> dist(m, 1.0 / (1.0 + family.parameter()));
      return dist(rng);
    }
  }
  return 0;
}

std::vector<double> survival_probability(const OffspringFamily& family, int n) {
  if (n < 1) throw std::invalid_argument("survival_probability: n must be >= 1");
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(n));
  double current = 1.0;  // p_0 = 1
  for (int k = 1; k <= n; ++k) {
    current = family.complement_pgf(current);
    p.push_back(current);
  }
  return p;
}

}  // namespace gwimm
