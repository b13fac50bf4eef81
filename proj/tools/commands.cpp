#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "gwimm/checks.hpp"
#include "gwimm/config.hpp"
#include "gwimm/limit.hpp"
#include "gwimm/lognum.hpp"
#include "gwimm/parallel.hpp"
#include "gwimm/process.hpp"
#include "gwimm/random.hpp"

namespace gwimm::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  unsigned jobs = 1;
  std::string out = "gwimm";
  bool ci = false;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool config_required) {
  auto* config = cmd.add_option("--config", o.config_path, "JSON config file");
  if (config_required) config->required();
  cmd.add_option("--seed", o.seed, "master seed (u64)");
  cmd.add_option("--replicates", o.replicates, "number of replicates")->check(CLI::PositiveNumber);
  cmd.add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--out", o.out, "output path prefix");
  cmd.add_flag("--ci", o.ci, "strict mode: the seed must be explicit");
}

json load_config(const CommonOptions& o) {
  if (o.config_path.empty()) return json::object();
  auto j = load_json_file(o.config_path);
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  return j;
}

std::uint64_t resolve_seed(const CommonOptions& o, const json& config) {
  if (o.seed) return *o.seed;
  if (config.contains("seed")) {
    if (!config.at("seed").is_number_unsigned()) throw ConfigError("'seed' must be an unsigned integer");
    return config.at("seed").get<std::uint64_t>();
  }
  if (o.ci) throw ConfigError("--ci requires an explicit seed (--seed or config 'seed')");
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) | device();
}

std::size_t resolve_replicates(const CommonOptions& o, const json& config) {
  if (o.replicates) return *o.replicates;
  if (config.contains("replicates")) {
    const auto& r = config.at("replicates");
    if (!r.is_number_integer() || r.get<long long>() < 1) throw ConfigError("'replicates' must be a positive integer");
    return r.get<std::size_t>();
  }
  return 1;
}

// Everything is rendered to memory first, so a failed run leaves no files.
void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

json metadata(const std::string& command, std::uint64_t seed, std::size_t replicates, json params) {
  return {{"command", command},
          {"params", std::move(params)},
          {"replicate_count", replicates},
          {"seed", seed},
          {"version", kVersion}};
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const CommonOptions& o, std::ostream& out) {
  const json config = load_config(o);
  GwiRun run = parse_run(config);
  const std::uint64_t seed = resolve_seed(o, config);
  const std::size_t replicates = resolve_replicates(o, config);

  std::string norm_name = "n";
  if (config.contains("norm")) {
    if (!config.at("norm").is_string()) throw ConfigError("'norm' must be \"n\" or \"b_n\"");
    norm_name = config.at("norm").get<std::string>();
    if (norm_name != "n" && norm_name != "b_n") throw ConfigError("'norm' must be \"n\" or \"b_n\"");
  }
  bool correction = false;
  if (config.contains("supercritical_correction")) {
    if (!config.at("supercritical_correction").is_boolean())
      throw ConfigError("'supercritical_correction' must be a boolean");
    correction = config.at("supercritical_correction").get<bool>();
  }
  const double norm = norm_name == "n" ? static_cast<double>(run.n) : norming_bn(run.law, run.n);
  const std::optional<double> mu = correction ? std::optional<double>(run.family.mean()) : std::nullopt;

  auto rows = parallel_map(replicates, o.jobs, [&](std::size_t r) {
    GwiRun rep = run;
    rep.seed = replicate_seed(seed, r);
    const auto path = normalized_observable(simulate_y_path(rep), norm, rep.n, mu);
    std::string block;
    const std::string prefix = std::to_string(r) + ",";
    for (const auto& s : path.segments()) {
      block += prefix + format_double(s.start) + "," + format_double(s.value) + "\n";
    }
    return block;
  });

  std::string csv = "replicate,t,value\n";
  for (const auto& block : rows) csv += block;
  json params = to_json(run);
  params["norm"] = norm_name;
  params["norm_value"] = norm;
  params["supercritical_correction"] = correction;

  write_file(o.out + ".csv", csv);
  write_file(o.out + ".json", pretty(metadata("simulate", seed, replicates, params)));
  out << "wrote " << o.out << ".csv (" << replicates << " replicates, " << run.steps() + 1 << " points each)\n";
  return kOk;
}

// --- limit-sample -----------------------------------------------------------

void validate_shape(const CadlagPath& path, double slope) {
  const auto& segs = path.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const double t_end = i + 1 < segs.size() ? segs[i + 1].start : path.end();
    if (slope == 0.0 && (s.slope != 0.0 || (i > 0 && s.value < path.left_limit(s.start))))
      throw ValidationError("extremal path is not nondecreasing");
    if (slope < 0.0 && (s.value < 0.0 || (s.slope != slope && s.slope != 0.0)))
      throw ValidationError("decaying shot noise path has the wrong shape");
    if (slope > 0.0 && (s.value < s.start * slope * (1 - 1e-12) || path.left_limit(t_end) < t_end * slope * (1 - 1e-12)))
      throw ValidationError("growing shot noise path dips below its floor");
  }
}

int cmd_limit_sample(const CommonOptions& o, std::ostream& out) {
  const json config = load_config(o);
  const PrmParams params = parse_prm(config);
  double slope = 0.0;
  if (config.contains("slope")) {
    if (!config.at("slope").is_number()) throw ConfigError("'slope' must be a number");
    slope = config.at("slope").get<double>();
  } else if (config.contains("mu")) {
    if (!config.at("mu").is_number() || !(config.at("mu").get<double>() > 0.0))
      throw ConfigError("'mu' must be a positive number");
    slope = std::log(config.at("mu").get<double>());
  }
  int grid_points = 201;
  if (config.contains("grid_points")) {
    if (!config.at("grid_points").is_number_integer() || config.at("grid_points").get<long long>() < 2)
      throw ConfigError("'grid_points' must be an integer >= 2");
    grid_points = config.at("grid_points").get<int>();
  }
  if (!(params.horizon > 0.0)) throw ConfigError("'T' must be positive for a path");
  const std::uint64_t seed = resolve_seed(o, config);
  const std::size_t replicates = resolve_replicates(o, config);

  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) grid[i] = params.horizon * i / (grid_points - 1);

  struct Rendered {
    std::string csv;
    json atoms;
  };
  auto rendered = parallel_map(replicates, o.jobs, [&](std::size_t r) {
    Stream rng(replicate_seed(seed, r), 0);
    ShotNoiseSpec spec{slope, sample_atoms(params, rng)};
    std::sort(spec.atoms.atoms.begin(), spec.atoms.atoms.end(),
              [](const Atom& x, const Atom& y) { return x.time < y.time; });
    const auto path = shot_noise_path(spec, grid);
    validate_shape(path, slope);

    Rendered out;
    const std::string prefix = std::to_string(r) + ",";
    auto row = [&](double t, double v) { out.csv += prefix + format_double(t) + "," + format_double(v) + "\n"; };
    for (const auto& s : path.segments()) {
      if (s.start > 0.0) {
        const double left = path.left_limit(s.start);
        if (left != s.value) row(s.start, left);
      }
      row(s.start, s.value);
    }
    if (path.end() > path.segments().back().start) row(path.end(), path.value(path.end()));

    json atoms = json::array();
    for (const auto& a : spec.atoms.atoms) atoms.push_back({a.time, a.mark});
    out.atoms = {{"replicate", r}, {"atom_count", spec.atoms.atoms.size()}, {"atoms", std::move(atoms)}};
    return out;
  });

  std::string csv = "replicate,t,value\n";
  json atom_list = json::array();
  for (auto& r : rendered) {
    csv += r.csv;
    atom_list.push_back(std::move(r.atoms));
  }
  const json prm = {{"a", params.a}, {"b", params.b}, {"T", params.horizon}, {"delta", params.delta},
                    {"slope", slope}, {"grid_points", grid_points}};
  write_file(o.out + ".csv", csv);
  write_file(o.out + "_atoms.json", pretty({{"replicates", atom_list}}));
  write_file(o.out + ".json", pretty(metadata("limit-sample", seed, replicates, prm)));
  out << "wrote " << o.out << ".csv and " << o.out << "_atoms.json\n";
  return kOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const CommonOptions& o, std::string check, std::ostream& out, std::ostream& err) {
  json config = load_config(o);
  if (check.empty()) {
    if (!config.contains("check") || !config.at("check").is_string())
      throw ConfigError("no check named (use --check or config 'check')");
    check = config.at("check").get<std::string>();
  }
  const auto& names = check_names();
  if (std::find(names.begin(), names.end(), check) == names.end()) throw ConfigError("unknown check '" + check + "'");

  CheckOptions options;
  options.seed = resolve_seed(o, config);
  options.jobs = o.jobs;
  options.overrides = config;
  options.overrides.erase("check");
  options.overrides.erase("seed");
  if (o.replicates) options.overrides["replicates"] = *o.replicates;

  CheckReport report;
  try {
    report = run_check(check, options);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad check parameter: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  auto report_json = to_json(report);
  report_json["seed"] = options.seed;
  write_file(o.out + ".json", pretty(report_json));
  out << check << ": statistic=" << format_double(report.statistic)
      << " threshold=" << format_double(report.threshold) << (report.pass ? " PASS" : " FAIL") << "\n";
  if (report.timings.contains("total")) err << check << " took " << report.timings["total"].get<double>() << " s\n";
  return report.pass ? kOk : kVerification;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galton-Watson processes with very active immigration: simulation and verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonOptions simulate_opts, limit_opts, verify_opts;
  std::string check;
  auto* simulate = app.add_subcommand("simulate", "simulate normalized prelimit paths log+(Y_[n.]) / norm");
  add_common(*simulate, simulate_opts, true);
  auto* limit = app.add_subcommand("limit-sample", "sample extremal shot noise limit paths");
  add_common(*limit, limit_opts, true);
  auto* verify = app.add_subcommand("verify", "run a registered verification check");
  add_common(*verify, verify_opts, false);
  verify->add_option("--check", check, "check name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(simulate_opts, out);
    if (limit->parsed()) return cmd_limit_sample(limit_opts, out);
    if (verify->parsed()) return cmd_verify(verify_opts, check, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerification;
  }
  return kUsage;
}

}  // namespace gwimm::cli
