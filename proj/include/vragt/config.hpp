#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vragt/noise.hpp"
#include "vragt/problems.hpp"
#include "vragt/schedules.hpp"

namespace vragt {

enum class AlgorithmKind { VraGt, RPushPull };

struct GraphSpec {
  std::optional<std::string> file;
  int n = 100;
  double p = 0.3;
  std::uint64_t seed = 1;
};

struct RidgeSpec {
  std::optional<std::string> file;
  std::optional<int> n;  // defaults to the graph's agent count
  int d1 = 3;
  int d = 2;
  double r = 0.05;
  Box box;
  std::uint64_t seed = 7;
};

struct ExperimentConfig {
  GraphSpec graph;
  RidgeSpec problem;
  ScheduleSet sched = default_vra_gt_schedules();
  NoiseModel pull;
  NoiseModel push;
  AlgorithmKind algorithm = AlgorithmKind::VraGt;
  double rpp_beta = 0.01;  // pinned factors for the R-Push-Pull baseline
  double rpp_alpha = 0.01;
  long iterations = 1000;
  int record_every = 10;
  std::vector<std::uint64_t> seeds = {0};
  bool diagnostics = false;
};

// Throws InvalidConfiguration on malformed or missing fields.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

}  // namespace vragt
