#include "gwimm/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

#include "gwimm/cohort.hpp"
#include "gwimm/config.hpp"
#include "gwimm/limit.hpp"
#include "gwimm/parallel.hpp"
#include "gwimm/process.hpp"
#include "gwimm/random.hpp"
#include "gwimm/stats.hpp"

namespace gwimm {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

template <class T>
T param(const json& overrides, const char* key, T fallback) {
  if (overrides.is_object() && overrides.contains(key)) return overrides.at(key).get<T>();
  return fallback;
}

// Run settings shared by every level of a sweep; n varies per level.
json run_template(const GwiRun& run) {
  json j = to_json(run);
  j.erase("n");
  return j;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Distribution function of the Theorem-1 limit at time u for offspring mean
// mu and tail constant c (log J tail ~ c / x).
std::function<double(double)> shot_noise_marginal(double c, double mu, double u) {
  const double s = std::log(mu);
  return [=](double x) {
    if (s < 0.0) return marginal_cdf_negslope(c, -s, u, std::max(x, 0.0));
    if (s > 0.0) return marginal_cdf_posslope(c, s, u, std::max(x, 0.0));
    return x > 0.0 ? marginal_cdf_extremal(c, 1.0, u, x) : 0.0;
  };
}

// --- marginal-limit ---------------------------------------------------------

CheckReport marginal_limit(const CheckOptions& opt) {
  const auto& o = opt.overrides;
  const double a = param(o, "a", 1.0);
  const double u = param(o, "u", 1.0);
  const double delta = param(o, "delta", 1e-3);
  const auto samples = param<std::size_t>(o, "samples", 100'000);
  const double threshold = param(o, "threshold", 0.01);

  CheckReport report{"marginal-limit", 0.0, threshold, true, json::object()};
  report.details["parameters"] = {{"a", a}, {"b", 1.0}, {"u", u}, {"delta", delta}, {"samples", samples}};

  const std::vector<std::pair<std::string, double>> regimes{
      {"negative", -std::numbers::ln2}, {"zero", 0.0}, {"positive", std::numbers::ln2}};
  for (std::size_t idx = 0; idx < regimes.size(); ++idx) {
    const auto& [label, slope] = regimes[idx];
    const auto start = Clock::now();
    const PrmParams params{a, 1.0, u, delta};
    const Stream root(opt.seed, idx + 1);
    auto values = parallel_map(samples, opt.jobs, [&](std::size_t r) {
      Stream rng = root.substream(r);
      const ShotNoiseSpec spec{slope, sample_atoms(params, rng)};
      return shot_noise_value(spec, u);
    });
    const Sample sample(std::move(values));
    const double ks = ks_distance(sample, shot_noise_marginal(a, std::exp(slope), u));
    report.details[label] = {{"slope", slope}, {"ks", ks}};
    report.timings[label] = seconds_since(start);
    report.statistic = std::max(report.statistic, ks);
  }
  report.pass = report.statistic <= threshold;
  return report;
}

// --- prelimit marginals -----------------------------------------------------

struct PrelimitLevel {
  int n;
  double ks;
  double seconds;
};

PrelimitLevel prelimit_ks(GwiRun run, double u, double norm, std::size_t replicates, const CheckOptions& opt,
                          const std::function<double(double)>& cdf) {
  const auto start = Clock::now();
  run.horizon = u;
  const std::uint64_t level_seed = splitmix64(opt.seed + static_cast<std::uint64_t>(run.n));
  auto values = parallel_map(replicates, opt.jobs, [&](std::size_t r) {
    GwiRun rep = run;
    rep.seed = replicate_seed(level_seed, r);
    return log_plus(simulate_y_path(rep).back()) / norm;
  });
  const Sample sample(std::move(values));
  return {run.n, ks_distance(sample, cdf), seconds_since(start)};
}

json level_json(const PrelimitLevel& l) { return {{"n", l.n}, {"ks", l.ks}}; }

CheckReport marginal_prelimit_thm1(const CheckOptions& opt) {
  const auto& o = opt.overrides;
  GwiRun run;
  run.family = o.contains("offspring") ? parse_offspring(o.at("offspring")) : OffspringFamily::binary(0.5);
  run.law = o.contains("immigration") ? parse_immigration(o.at("immigration")) : ImmigrationLaw::reciprocal(1.0);
  run.config = parse_fluid(o.contains("fluid") ? o.at("fluid") : json());
  if (run.law.kind() != ImmigrationLaw::Kind::reciprocal)
    throw ConfigError("marginal-prelimit-thm1 needs reciprocal immigration (tail ~ c / x)");
  const double u = param(o, "u", 1.0);
  const auto ns = param<std::vector<int>>(o, "ns", {50, 200, 800});
  const auto replicates = param<std::size_t>(o, "replicates", 2000);
  const double threshold = param(o, "threshold", 0.15);
  const double slack = param(o, "slack", 0.02);
  const auto cdf = shot_noise_marginal(run.law.parameter(), run.family.mean(), u);

  CheckReport report{"marginal-prelimit-thm1", 0.0, threshold, false, json::object()};
  report.details["parameters"] = {{"run", run_template(run)}, {"u", u}, {"replicates", replicates}, {"slack", slack}};
  std::vector<PrelimitLevel> levels;
  for (int n : ns) {
    run.n = n;
    levels.push_back(prelimit_ks(run, u, n, replicates, opt, cdf));
    report.details["levels"].push_back(level_json(levels.back()));
    report.timings["n=" + std::to_string(n)] = levels.back().seconds;
  }
  bool trend = true;
  for (std::size_t i = 1; i < levels.size(); ++i) trend = trend && levels[i].ks <= levels[i - 1].ks + slack;
  report.statistic = levels.back().ks;
  report.details["trend_ok"] = trend;
  report.pass = trend && report.statistic <= threshold;
  return report;
}

CheckReport marginal_prelimit_thm2(const CheckOptions& opt) {
  const auto& o = opt.overrides;
  GwiRun run;
  run.family = o.contains("offspring") ? parse_offspring(o.at("offspring")) : OffspringFamily::geometric(0.5);
  run.law = o.contains("immigration") ? parse_immigration(o.at("immigration")) : ImmigrationLaw::pareto_log(0.5);
  run.config = parse_fluid(o.contains("fluid") ? o.at("fluid") : json());
  const double u = param(o, "u", 1.0);
  const int n_small = param(o, "n_small", 25);
  const int n_large = param(o, "n_large", 100);
  const auto replicates = param<std::size_t>(o, "replicates", 1000);
  const double threshold = param(o, "threshold", 0.15);
  const double slack = param(o, "slack", 0.02);
  const double alpha = run.law.tail_index();
  const std::function<double(double)> cdf = [=](double x) {
    return x > 0.0 ? marginal_cdf_extremal(1.0, alpha, u, x) : 0.0;
  };

  CheckReport report{"marginal-prelimit-thm2", 0.0, threshold, false, json::object()};
  report.details["parameters"] = {{"run", run_template(run)}, {"u", u}, {"replicates", replicates}, {"slack", slack}};
  std::vector<PrelimitLevel> levels;
  for (int n : {n_small, n_large}) {
    run.n = n;
    const double bn = norming_bn(run.law, n);
    levels.push_back(prelimit_ks(run, u, bn, replicates, opt, cdf));
    auto entry = level_json(levels.back());
    entry["b_n"] = bn;
    report.details["levels"].push_back(entry);
    report.timings["n=" + std::to_string(n)] = levels.back().seconds;
  }
  const bool trend = levels[0].ks >= levels[1].ks - slack;
  report.statistic = levels[1].ks;
  report.details["trend_ok"] = trend;
  report.pass = trend && report.statistic <= threshold;
  return report;
}

// --- fdd --------------------------------------------------------------------

struct MarginalCase {
  double a, b, slope, u, x;
};

double marginal_reference(const MarginalCase& c) {
  if (c.slope < 0.0) return marginal_cdf_negslope(c.a, -c.slope, c.u, c.x);
  if (c.slope > 0.0) return marginal_cdf_posslope(c.a, c.slope, c.u, c.x);
  return marginal_cdf_extremal(c.a, c.b, c.u, c.x);
}

CheckReport fdd(const CheckOptions& opt) {
  const auto& o = opt.overrides;
  const auto samples = param<std::size_t>(o, "samples", 100'000);
  const double mc_tolerance = param(o, "threshold", 0.01);
  const double exact_tolerance = 1e-9;

  // d = 1 reductions: slope sign x intensity x time x threshold.
  const std::vector<MarginalCase> sweep{
      {1.0, 1.0, -std::numbers::ln2, 1.0, 1.0}, {1.0, 1.0, -std::numbers::ln2, 2.0, 0.3},
      {0.5, 1.0, -0.2, 1.5, 2.0},              {2.0, 1.0, -1.5, 0.7, 0.05},
      {1.0, 1.0, -3.0, 3.0, 4.0},              {1.0, 1.0, 0.0, 1.0, 1.0},
      {1.0, 0.5, 0.0, 1.0, 2.0},               {3.0, 2.0, 0.0, 0.4, 0.8},
      {0.2, 1.5, 0.0, 5.0, 0.1},               {1.0, 0.25, 0.0, 2.0, 9.0},
      {1.0, 1.0, std::numbers::ln2, 1.0, 2.0 * std::numbers::ln2},
      {1.0, 1.0, std::numbers::ln2, 1.0, 3.0}, {0.5, 1.0, 0.1, 2.0, 0.25},
      {2.0, 1.0, 1.0, 0.5, 0.6},               {1.0, 1.0, 2.0, 3.0, 20.0},
      {1.0, 1.0, -0.05, 10.0, 0.5},            {4.0, 1.0, 0.5, 4.0, 2.5},
      {1.0, 3.0, 0.0, 1.0, 0.5},               {0.1, 1.0, -0.9, 0.2, 0.01},
      {1.0, 1.0, 0.3, 0.1, 0.031}};
  double sweep_error = 0.0;
  for (const auto& c : sweep) {
    const double times[] = {c.u};
    const double xs[] = {c.x};
    sweep_error = std::max(sweep_error, std::abs(fdd_cdf(c.a, c.b, c.slope, times, xs) - marginal_reference(c)));
  }

  // Extremal process, windows [0,1] and [0,2] with thresholds 1 and 2:
  // Lambda = int_0^1 1/min(1, 2) dt + int_1^2 1/2 dt = 1.5.
  const double times[] = {1.0, 2.0};
  const double xs[] = {1.0, 2.0};
  const double expected = std::exp(-1.5);
  const double quadrature_error = std::abs(fdd_cdf(1.0, 1.0, 0.0, times, xs) - expected);

  // Thresholds are >= 1, so atoms with marks <= 0.1 cannot affect the event.
  const PrmParams params{1.0, 1.0, 2.0, 0.1};
  const Stream root(opt.seed, 1);
  auto hits = parallel_map(samples, opt.jobs, [&](std::size_t r) {
    Stream rng = root.substream(r);
    const ShotNoiseSpec spec{0.0, sample_atoms(params, rng)};
    return (shot_noise_value(spec, 1.0) <= 1.0 && shot_noise_value(spec, 2.0) <= 2.0) ? 1.0 : 0.0;
  });
  double frequency = 0.0;
  for (double h : hits) frequency += h;
  frequency /= static_cast<double>(samples);
  const double mc_error = std::abs(frequency - expected);

  CheckReport report{"fdd", mc_error, mc_tolerance, false, json::object()};
  report.details = {{"d1_sweep_points", sweep.size()},
                    {"d1_max_error", sweep_error},
                    {"d2_quadrature_error", quadrature_error},
                    {"d2_expected", expected},
                    {"d2_monte_carlo_frequency", frequency},
                    {"samples", samples},
                    {"exact_tolerance", exact_tolerance}};
  report.pass = sweep_error <= exact_tolerance && quadrature_error <= exact_tolerance && mc_error <= mc_tolerance;
  return report;
}

// --- cohort profiles --------------------------------------------------------

std::vector<OffspringFamily> profile_families(const json& o) {
  if (!o.contains("families")) {
    return {OffspringFamily::geometric(0.5), OffspringFamily::binary(0.5), OffspringFamily::poisson(2.0)};
  }
  std::vector<OffspringFamily> out;
  for (const auto& f : o.at("families")) out.push_back(parse_offspring(f));
  return out;
}

// Fraction of replicates whose sup-grid deviation exceeds the tolerance,
// worst over families. `deviation(family, path)` gives the sup deviation.
template <class Deviation>
CheckReport cohort_profile_check(const std::string& name, const CheckOptions& opt, double log_initial, int n,
                                 Deviation&& deviation, json parameters) {
  const auto& o = opt.overrides;
  const double horizon = param(o, "T", 3.0);
  const auto replicates = param<std::size_t>(o, "replicates", 200);
  const double tolerance = param(o, "tolerance", name == "lemma-aux2" ? 0.1 : 0.05);
  const double allowed = param(o, "threshold", 0.05);
  const auto config = parse_fluid(o.contains("fluid") ? o.at("fluid") : json());
  const int generations = static_cast<int>(std::floor(n * horizon * (1.0 + 1e-12)));

  CheckReport report{name, 0.0, allowed, false, json::object()};
  parameters["T"] = horizon;
  parameters["replicates"] = replicates;
  parameters["tolerance"] = tolerance;
  report.details["parameters"] = parameters;
  const auto families = profile_families(o);
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& family = families[f];
    const auto start = Clock::now();
    auto devs = parallel_map(replicates, opt.jobs, [&](std::size_t r) {
      Stream rng(replicate_seed(opt.seed, r), f + 1);
      const auto path = simulate_cohort(family, LogMagnitude::from_log(log_initial), generations, config, rng);
      return deviation(family, path);
    });
    std::size_t exceed = 0;
    double worst = 0.0;
    for (double d : devs) {
      exceed += d > tolerance ? 1 : 0;
      worst = std::max(worst, d);
    }
    const double fraction = static_cast<double>(exceed) / static_cast<double>(replicates);
    report.details["families"].push_back({{"offspring", to_json(family)},
                                          {"exceed_fraction", fraction},
                                          {"max_deviation", worst}});
    report.timings[family.name()] = seconds_since(start);
    report.statistic = std::max(report.statistic, fraction);
  }
  report.pass = report.statistic <= allowed;
  return report;
}

CheckReport lemma_aux2(const CheckOptions& opt) {
  const auto& o = opt.overrides;
  const int n = param(o, "n", 200);
  const double a = param(o, "a", 1.0);
  auto deviation = [&](const OffspringFamily& family, const PopulationPath& path) {
    double sup = 0.0;
    for (std::size_t k = 0; k < path.values.size(); ++k) {
      const double t = static_cast<double>(k) / n;
      sup = std::max(sup, std::abs(log_plus(path.values[k]) / n - limit_profile(a, family.mean(), t)));
    }
    return sup;
  };
  return cohort_profile_check("lemma-aux2", opt, a * n, n, deviation, {{"n", n}, {"a", a}});
}

CheckReport lemma_aux2a(const CheckOptions& opt) {
  const auto& o = opt.overrides;
  const int n = param(o, "n", 100);
  const double c_n = static_cast<double>(n) * n;
  auto deviation = [&](const OffspringFamily&, const PopulationPath& path) {
    double sup = 0.0;
    for (const auto& v : path.values) sup = std::max(sup, std::abs(log_plus(v) / c_n - 1.0));
    return sup;
  };
  return cohort_profile_check("lemma-aux2a", opt, c_n, n, deviation, {{"n", n}, {"c_n", c_n}});
}

// --- lemma-aux3 -------------------------------------------------------------

// Frequency of sup_{k <= nT} log+(m(k) Y^(<=gamma)_k) / c_n > gamma + delta.
double truncated_exceedance(GwiRun run, bool linear_scale, double gamma, double delta, std::size_t replicates,
                            const CheckOptions& opt) {
  const double c_n = linear_scale ? run.n : norming_bn(run.law, run.n);
  const double mu = run.family.mean();
  const std::uint64_t level_seed = splitmix64(opt.seed + static_cast<std::uint64_t>(run.n) * 2 + (linear_scale ? 0 : 1));
  auto exceed = parallel_map(replicates, opt.jobs, [&](std::size_t r) {
    GwiRun rep = run;
    rep.seed = replicate_seed(level_seed, r);
    const auto y = truncated_y_path(rep, gamma, c_n);
    double sup = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      // m(k) = mu^-k ^ 1 on the linear scale, 1 otherwise.
      const auto v = (linear_scale && mu > 1.0) ? scale_pow(y[k], mu, -static_cast<std::int64_t>(k)) : y[k];
      sup = std::max(sup, log_plus(v) / c_n);
    }
    return sup > gamma + delta ? 1.0 : 0.0;
  });
  double hits = 0.0;
  for (double e : exceed) hits += e;
  return hits / static_cast<double>(replicates);
}

CheckReport lemma_aux3(const CheckOptions& opt) {
  const auto& o = opt.overrides;
  const double gamma = param(o, "gamma", 0.2);
  const double delta = param(o, "delta", 0.1);
  const double horizon = param(o, "T", 1.0);
  const int n = param(o, "n", 100);
  const auto replicates = param<std::size_t>(o, "replicates", 400);
  const auto trend_ns = param<std::vector<int>>(o, "trend_ns", {50, 100, 200});
  const auto trend_replicates = param<std::size_t>(o, "trend_replicates", 200);
  const double threshold = param(o, "threshold", 0.05);
  const double slack = param(o, "slack", 0.02);

  GwiRun linear;
  linear.family = OffspringFamily::binary(0.5);
  linear.law = ImmigrationLaw::reciprocal(1.0);
  linear.horizon = horizon;
  GwiRun superlinear;
  superlinear.family = OffspringFamily::geometric(0.5);
  superlinear.law = ImmigrationLaw::pareto_log(0.5);
  superlinear.horizon = horizon;

  CheckReport report{"lemma-aux3", 0.0, threshold, false, json::object()};
  report.details["parameters"] = {{"gamma", gamma}, {"delta", delta}, {"n", n}, {"T", horizon},
                                  {"replicates", replicates}, {"slack", slack}};
  linear.n = n;
  report.statistic = truncated_exceedance(linear, true, gamma, delta, replicates, opt);

  bool trend = true;
  for (auto [label, base, linear_scale] :
       {std::tuple{"c_n=n", linear, true}, std::tuple{"c_n=b_n", superlinear, false}}) {
    json entry = {{"scaling", label}, {"run", run_template(base)}};
    double previous = 1.0;
    for (int m : trend_ns) {
      base.n = m;
      const double f = truncated_exceedance(base, linear_scale, gamma, delta, trend_replicates, opt);
      entry["frequencies"].push_back({{"n", m}, {"exceedance", f}});
      trend = trend && f <= previous + slack;
      previous = f;
    }
    report.details["trend"].push_back(entry);
  }
  report.details["trend_ok"] = trend;
  report.pass = trend && report.statistic <= threshold;
  return report;
}

// --- proxy-zn ---------------------------------------------------------------

CheckReport proxy_zn(const CheckOptions& opt) {
  const auto& o = opt.overrides;
  GwiRun run;
  run.family = o.contains("offspring") ? parse_offspring(o.at("offspring")) : OffspringFamily::poisson(2.0);
  run.law = o.contains("immigration") ? parse_immigration(o.at("immigration")) : ImmigrationLaw::reciprocal(1.0);
  run.n = param(o, "n", 100);
  run.horizon = 1.0;
  const auto replicates = param<std::size_t>(o, "replicates", 200);
  const double tolerance = param(o, "tolerance", 0.05);
  const double threshold = param(o, "threshold", 0.10);

  auto gaps = parallel_map(replicates, opt.jobs, [&](std::size_t r) {
    GwiRun rep = run;
    rep.seed = replicate_seed(opt.seed, r);
    const auto paths = simulate_coupled(rep);
    return std::abs(log_plus(paths.y.back()) - log_plus(paths.z.back())) / rep.n;
  });
  std::size_t exceed = 0;
  double worst = 0.0;
  for (double g : gaps) {
    exceed += g > tolerance ? 1 : 0;
    worst = std::max(worst, g);
  }
  CheckReport report{"proxy-zn", static_cast<double>(exceed) / static_cast<double>(replicates), threshold, false,
                     json::object()};
  report.details = {{"parameters", {{"run", to_json(run)}, {"replicates", replicates}, {"tolerance", tolerance}}},
                    {"max_gap", worst}};
  report.pass = report.statistic <= threshold;
  return report;
}

using CheckFn = CheckReport (*)(const CheckOptions&);

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> checks{
      {"marginal-limit", &marginal_limit},
      {"marginal-prelimit-thm1", &marginal_prelimit_thm1},
      {"marginal-prelimit-thm2", &marginal_prelimit_thm2},
      {"fdd", &fdd},
      {"lemma-aux2", &lemma_aux2},
      {"lemma-aux2a", &lemma_aux2a},
      {"lemma-aux3", &lemma_aux3},
      {"proxy-zn", &proxy_zn},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

CheckReport run_check(const std::string& name, const CheckOptions& options) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown check '" + name + "'");
  const auto start = Clock::now();
  auto report = it->second(options);
  report.timings["total"] = seconds_since(start);
  return report;
}

nlohmann::json to_json(const CheckReport& report) {
  return {{"check", report.check},
          {"statistic", report.statistic},
          {"threshold", report.threshold},
          {"pass", report.pass},
          {"details", report.details}};
}

}  // namespace gwimm
