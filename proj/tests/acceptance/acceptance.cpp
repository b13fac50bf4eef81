// Runs every acceptance criterion at full scale and prints one verdict line
// per criterion. Exit status is nonzero if any criterion fails.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "commands.hpp"
#include "gwimm/checks.hpp"
#include "gwimm/immigration.hpp"
#include "gwimm/lognum.hpp"
#include "gwimm/offspring.hpp"
#include "gwimm/process.hpp"
#include "gwimm/random.hpp"

using namespace gwimm;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
  bool pass;
  std::string summary;
};

int failures = 0;

void report(int id, const std::string& title, const Verdict& v) {
  std::printf("%s [%2d] %s: %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.summary.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

CheckReport check(const std::string& name) {
  CheckOptions options;
  options.seed = kSeed;
  options.jobs = std::max(1u, std::thread::hardware_concurrency());
  return run_check(name, options);
}

Verdict limit_marginal(const CheckReport& r, const std::string& label, double max_seconds) {
  const double ks = r.details.at(label).at("ks").get<double>();
  const double seconds = r.timings.at(label).get<double>();
  Verdict v{ks <= r.threshold && seconds <= max_seconds,
            "ks=" + fmt(ks) + " (<= " + fmt(r.threshold) + "), " + fmt(seconds) + " s"};
  if (max_seconds < INFINITY) v.summary += " (<= " + fmt(max_seconds) + " s)";
  return v;
}

Verdict ratio_limit() {
  double worst = 0.0;
  for (const auto& f : {OffspringFamily::poisson(0.9), OffspringFamily::geometric(0.9), OffspringFamily::binary(0.5)}) {
    const auto p = survival_probability(f, 1001);
    worst = std::max(worst, std::abs(p[1000] / p[999] - f.mean()));
  }
  return {worst <= 0.01, "max |p_1001/p_1000 - mu|=" + fmt(worst) + " (<= 0.01)"};
}

Verdict norming() {
  double closed_form = 0.0;
  for (double c : {0.5, 1.0, 2.0, 7.25})
    for (long long n : {1LL, 10LL, 100LL, 12345LL, 1'000'000LL}) {
      const double want = c * static_cast<double>(n);
      closed_form = std::max(closed_form, std::abs(norming_bn(ImmigrationLaw::reciprocal(c), n) - want) / want);
    }
  for (double alpha : {0.25, 0.3, 0.5, 0.9})
    for (long long n : {1LL, 10LL, 100LL, 12345LL, 1'000'000LL}) {
      const long double want = std::pow(static_cast<long double>(n), 1.0L / static_cast<long double>(alpha));
      const long double got = norming_bn(ImmigrationLaw::pareto_log(alpha), n);
      closed_form = std::max(closed_form, static_cast<double>(std::fabs(got - want) / want));
    }
  double residual = 0.0;
  const auto sv = ImmigrationLaw::pareto_log_sv();
  for (long long n : {2LL, 10LL, 100LL, 1000LL, 1'000'000LL}) {
    const double b = norming_bn(sv, n);
    residual = std::max(residual, std::abs(static_cast<double>(n) * tail(sv, b) - 1.0));
  }
  return {closed_form <= 1e-12 && residual <= 1e-9,
          "closed-form rel err=" + fmt(closed_form) + " (<= 1e-12), slowly varying residual=" + fmt(residual) + " (<= 1e-9)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict properties() {
  // log+ subadditivity, exact.
  Stream rng(kSeed, 11);
  int subadditive_violations = 0;
  for (int i = 0; i < 10'000; ++i) {
    auto draw = [&] {
      if (rng.uniform() < 0.05) return LogMagnitude::zero();
      return LogMagnitude::from_log(std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng() % 24)));
    };
    const auto x = draw();
    const auto y = draw();
    const double s = log_plus(lse_add(x, y));
    if (!(log_plus(x) <= s && s <= log_plus(x) + log_plus(y) + 2.0 * std::log(2.0))) ++subadditive_violations;
  }

  // Coupled truncation never exceeds the full process, exact.
  int coupling_violations = 0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    GwiRun run;
    run.n = 40;
    run.horizon = 1.5;
    run.family = r % 3 == 0 ? OffspringFamily::geometric(0.5) : r % 3 == 1 ? OffspringFamily::binary(0.5) : OffspringFamily::poisson(2.0);
    run.law = r % 2 == 0 ? ImmigrationLaw::reciprocal(1.0) : ImmigrationLaw::pareto_log(0.5);
    run.seed = replicate_seed(kSeed, r);
    const double c_n = r % 2 == 0 ? run.n : norming_bn(run.law, run.n);
    const auto paths = simulate_coupled(run, Truncation{0.2, c_n});
    for (std::size_t i = 0; i < paths.y.size(); ++i)
      if (!(paths.y_truncated[i] <= paths.y[i])) ++coupling_violations;
  }

  // Byte-identical outputs for repeated CLI invocations.
  const fs::path dir = fs::temp_directory_path() / ("gwimm_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "sim.json") << R"({"n": 50, "T": 2, "offspring": {"family": "poisson", "mean": 2},
      "immigration": {"variant": "reciprocal", "c": 1}, "supercritical_correction": true})";
  std::ofstream(dir / "lim.json") << R"({"a": 1, "b": 1, "T": 3, "delta": 0.001, "slope": -0.6931471805599453})";
  std::ofstream(dir / "ver.json") << R"({"check": "lemma-aux2a"})";
  const std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> commands{
      {"simulate", "sim", {".csv", ".json"}},
      {"limit-sample", "lim", {".csv", ".json", "_atoms.json"}},
      {"verify", "ver", {".json"}}};
  int mismatches = 0;
  for (const auto& [command, stem, suffixes] : commands) {
    for (const char* tag : {"_1", "_2"}) {
      std::ostringstream out, err;
      const int code = cli::run({command, "--config", (dir / (stem + ".json")).string(), "--seed", "99", "--replicates",
                                 "5", "--out", (dir / (stem + tag)).string()},
                                out, err);
      if (code != 0) ++mismatches;
    }
    for (const auto& suffix : suffixes) {
      const auto a = slurp(dir / (stem + "_1" + suffix));
      if (a.empty() || a != slurp(dir / (stem + "_2" + suffix))) ++mismatches;
    }
  }
  fs::remove_all(dir);

  return {subadditive_violations == 0 && coupling_violations == 0 && mismatches == 0,
          "subadditivity violations=" + std::to_string(subadditive_violations) + "/10000, coupling violations=" +
              std::to_string(coupling_violations) + " over 1000 runs, nondeterministic outputs=" +
              std::to_string(mismatches) + " over 3 commands"};
}

Verdict timed_check(const CheckReport& r, double seconds, double max_seconds, const std::string& extra = "") {
  Verdict v{r.pass && seconds <= max_seconds,
            "statistic=" + fmt(r.statistic) + " (<= " + fmt(r.threshold) + ")" + extra + ", " + fmt(seconds) + " s"};
  if (max_seconds < INFINITY) v.summary += " (<= " + fmt(max_seconds) + " s)";
  return v;
}

double timed(const std::function<CheckReport()>& fn, CheckReport& out) {
  const auto start = std::chrono::steady_clock::now();
  out = fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto limit = check("marginal-limit");
    report(1, "limit sampler marginal, negative slope", limit_marginal(limit, "negative", 10.0));
    report(2, "limit sampler marginal, extremal", limit_marginal(limit, "zero", INFINITY));
    report(3, "limit sampler marginal, positive slope", limit_marginal(limit, "positive", INFINITY));

    CheckReport r;
    double s = timed([] { return check("marginal-prelimit-thm1"); }, r);
    std::string levels;
    for (const auto& l : r.details.at("levels")) levels += " n=" + std::to_string(l.at("n").get<int>()) + ":" + fmt(l.at("ks").get<double>());
    report(4, "Theorem 1 prelimit marginal", timed_check(r, s, 180.0, ", ks by level" + levels));

    s = timed([] { return check("lemma-aux2"); }, r);
    report(5, "cohort growth profile", timed_check(r, s, 30.0));
    s = timed([] { return check("lemma-aux2a"); }, r);
    report(6, "superexponential cohort flatness", timed_check(r, s, INFINITY));

    report(7, "survival ratio limit", ratio_limit());
    report(8, "norming solver", norming());

    s = timed([] { return check("marginal-prelimit-thm2"); }, r);
    levels.clear();
    for (const auto& l : r.details.at("levels")) levels += " n=" + std::to_string(l.at("n").get<int>()) + ":" + fmt(l.at("ks").get<double>());
    report(9, "Theorem 2 prelimit marginal", timed_check(r, s, INFINITY, ", ks by level" + levels));

    s = timed([] { return check("fdd"); }, r);
    report(10, "fdd self-consistency",
           timed_check(r, s, INFINITY,
                       ", d=1 sweep err=" + fmt(r.details.at("d1_max_error").get<double>()) +
                           ", d=2 quadrature err=" + fmt(r.details.at("d2_quadrature_error").get<double>()) + " (<= 1e-9)"));

    report(11, "property suites", properties());
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 2;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s total runtime %.1f s (target < 600 s)\n", total < 600.0 ? "PASS" : "FAIL", total);
  if (total >= 600.0) ++failures;
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
