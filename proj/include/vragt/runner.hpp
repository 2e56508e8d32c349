#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vragt/algorithm.hpp"
#include "vragt/config.hpp"
#include "vragt/graph.hpp"
#include "vragt/schedules.hpp"

namespace vragt {

// Everything a run needs, materialized from a config.
struct BuiltExperiment {
  Digraph graph{1};
  WeightPair weights;
  EigenPair eig;
  std::unique_ptr<Objective> problem;
  ScheduleSet sched;
  NoiseModel pull;
  NoiseModel push;
};

BuiltExperiment build_experiment(const ExperimentConfig& cfg);

struct FullValidation {
  ValidationReport report;          // every checked condition
  double predicted_rate = 0.0;      // from the rate-theorem validator
  bool gate_pass = true;            // conditions that gate a run
};

// Aggregates the module validators: Assumption 2 roots/intersection, weight
// stochasticity, schedule theorem conditions, noise summability. Theorem
// schedule conditions gate only the vra_gt algorithm; the rate-theorem
// conditions are reported but never gate.
FullValidation validate_experiment(const ExperimentConfig& cfg,
                                   const BuiltExperiment& built);

struct ExperimentResult {
  std::vector<std::vector<TrajectoryPoint>> per_seed;
  FullValidation validation;
  double wall_seconds = 0.0;
};

// Runs every seed and writes seed_<i>.csv, aggregate.csv and metadata.json
// into out_dir. Throws Error(InvalidConfiguration) when validation fails and
// force is not set. threads <= 0 keeps the OpenMP default.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir, int threads,
                                bool force);

}  // namespace vragt
