#pragma once

#include <map>
#include <string>
#include <vector>

#include "vragt/algorithm.hpp"

namespace vragt {

// Per-seed trajectory CSV: header "k,opt_gap,consensus,tracking,
// conservation_residual", floats with 17 significant digits.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& records);
void write_trajectory_csv(const std::vector<TrajectoryPoint>& records,
                          const std::string& path);

// Aggregate over seeds at matching k: mean, median, variance per metric.
// Columns: k, then <metric>_mean, <metric>_median, <metric>_var for each of
// opt_gap, consensus, tracking, conservation_residual.
std::string aggregate_csv(
    const std::vector<std::vector<TrajectoryPoint>>& per_seed);
void write_aggregate_csv(
    const std::vector<std::vector<TrajectoryPoint>>& per_seed,
    const std::string& path);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::vector<double> column_values(const std::string& name) const;
  int column_index(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace vragt
