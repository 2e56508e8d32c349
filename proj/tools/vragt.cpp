#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "vragt/csv.hpp"
#include "vragt/errors.hpp"
#include "vragt/rate_fit.hpp"
#include "vragt/runner.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfigError = 2;
constexpr int kExitValidationFailure = 3;
constexpr int kExitDivergence = 4;

int exit_code_for(const vragt::Error& e) {
  switch (e.kind()) {
    case vragt::ErrorKind::ValidationFailure:
      return kExitValidationFailure;
    case vragt::ErrorKind::Divergence:
      return kExitDivergence;
    default:
      return kExitConfigError;
  }
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw vragt::Error(vragt::ErrorKind::InvalidConfiguration,
                       "cannot open " + path);
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw vragt::Error(vragt::ErrorKind::InvalidConfiguration,
                       std::string("config parse error: ") + e.what());
  }
  return j;
}

void print_report(const vragt::ValidationReport& report) {
  for (const auto& c : report.conditions) {
    std::printf("%-4s %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : "  -- ", c.detail.c_str());
  }
}

// Sets a dotted path like "noise.sigma2_pull" inside a json object.
void set_dotted(json& j, const std::string& path, const json& value) {
  json* cursor = &j;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = path.find('.', start);
    std::string key = path.substr(start, dot - start);
    if (dot == std::string::npos) {
      (*cursor)[key] = value;
      return;
    }
    cursor = &(*cursor)[key];
    start = dot + 1;
  }
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int seeds_override, int threads, bool force) {
  json j = load_json(config_path);
  if (seeds_override > 0) {
    j.erase("seed_list");
    j["seeds"] = seeds_override;
  }
  vragt::ExperimentConfig cfg = vragt::parse_config(j);
  auto result = vragt::run_experiment(cfg, out_dir, threads, force);
  std::printf("wrote %zu seed trajectories to %s (%.2fs)\n",
              result.per_seed.size(), out_dir.c_str(), result.wall_seconds);
  return 0;
}

int cmd_validate(const std::string& config_path) {
  vragt::ExperimentConfig cfg = vragt::load_config(config_path);
  vragt::BuiltExperiment built = vragt::build_experiment(cfg);
  auto v = vragt::validate_experiment(cfg, built);
  print_report(v.report);
  return v.report.pass ? 0 : kExitValidationFailure;
}

int cmd_fit_rate(const std::string& csv_path, const std::string& metric,
                 double k_lo, double k_hi) {
  vragt::CsvTable table = vragt::read_csv(csv_path);
  auto ks = table.column_values("k");
  auto ys = table.column_values(metric);
  auto fit = vragt::fit_rate(ks, ys, k_lo, k_hi);
  std::printf("metric=%s window=[%g,%g] points=%d slope=%.6f intercept=%.6f r2=%.6f\n",
              metric.c_str(), fit.k_lo, fit.k_hi, fit.points, fit.slope,
              fit.intercept, fit.r_squared);
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              int threads, bool force) {
  json base = load_json(config_path);
  if (!base.contains("sweep") || !base.at("sweep").is_object())
    throw vragt::Error(vragt::ErrorKind::InvalidConfiguration,
                       "sweep: config must contain a \"sweep\" object");
  json sweep = base.at("sweep");
  base.erase("sweep");

  std::vector<std::string> keys;
  std::vector<std::vector<json>> values;
  for (auto it = sweep.begin(); it != sweep.end(); ++it) {
    if (!it.value().is_array() || it.value().empty())
      throw vragt::Error(vragt::ErrorKind::InvalidConfiguration,
                         "sweep." + it.key() + " must be a nonempty array");
    keys.push_back(it.key());
    values.emplace_back(it.value().begin(), it.value().end());
  }

  std::vector<std::size_t> index(keys.size(), 0);
  while (true) {
    json cell = base;
    std::string cell_name;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      set_dotted(cell, keys[i], values[i][index[i]]);
      std::string v = values[i][index[i]].dump();
      std::string k = keys[i];
      for (char& c : k)
        if (c == '.') c = '_';
      cell_name += (cell_name.empty() ? "" : "__") + k + "=" + v;
    }
    auto cell_dir = std::filesystem::path(out_dir) / cell_name;
    vragt::ExperimentConfig cfg = vragt::parse_config(cell);
    auto result = vragt::run_experiment(cfg, cell_dir.string(), threads, force);
    std::printf("cell %s: %zu seeds (%.2fs)\n", cell_name.c_str(),
                result.per_seed.size(), result.wall_seconds);

    std::size_t level = 0;
    while (level < index.size()) {
      if (++index[level] < values[level].size()) break;
      index[level] = 0;
      ++level;
    }
    if (level == index.size()) break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VRA-GT distributed optimization simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", csv_path, metric = "opt_gap_mean";
  int seeds_override = 0, threads = 0;
  bool force = false;
  double k_lo = 0.0, k_hi = 0.0;

  auto* run_cmd = app.add_subcommand("run", "run an experiment over seeds");
  run_cmd->add_option("--config", config_path)->required();
  run_cmd->add_option("--out", out_dir);
  run_cmd->add_option("--seeds", seeds_override);
  run_cmd->add_option("--threads", threads);
  run_cmd->add_flag("--force", force, "run despite validator failures");

  auto* validate_cmd =
      app.add_subcommand("validate", "check assumptions and theorem conditions");
  validate_cmd->add_option("--config", config_path)->required();

  auto* fit_cmd = app.add_subcommand("fit-rate", "log-log slope of a metric");
  fit_cmd->add_option("csv", csv_path)->required();
  fit_cmd->add_option("--metric", metric);
  fit_cmd->add_option("--k-lo", k_lo)->required();
  fit_cmd->add_option("--k-hi", k_hi)->required();

  auto* sweep_cmd =
      app.add_subcommand("sweep", "cartesian product over listed parameters");
  sweep_cmd->add_option("--config", config_path)->required();
  sweep_cmd->add_option("--out", out_dir);
  sweep_cmd->add_option("--threads", threads);
  sweep_cmd->add_flag("--force", force);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed())
      return cmd_run(config_path, out_dir, seeds_override, threads, force);
    if (validate_cmd->parsed()) return cmd_validate(config_path);
    if (fit_cmd->parsed()) return cmd_fit_rate(csv_path, metric, k_lo, k_hi);
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, out_dir, threads, force);
  } catch (const vragt::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
