#include "vragt/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vragt/errors.hpp"

namespace vragt {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr const char* kMetricNames[] = {"opt_gap", "consensus", "tracking",
                                        "conservation_residual"};

double metric_of(const TrajectoryPoint& p, int m) {
  switch (m) {
    case 0: return p.opt_gap;
    case 1: return p.consensus;
    case 2: return p.tracking;
    default: return p.conservation_residual;
  }
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double variance_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

std::string trajectory_csv(const std::vector<TrajectoryPoint>& records) {
  std::ostringstream os;
  os << "k,opt_gap,consensus,tracking,conservation_residual\n";
  for (const auto& p : records) {
    os << p.k << "," << fmt17(p.opt_gap) << "," << fmt17(p.consensus) << ","
       << fmt17(p.tracking) << "," << fmt17(p.conservation_residual) << "\n";
  }
  return os.str();
}

void write_trajectory_csv(const std::vector<TrajectoryPoint>& records,
                          const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  os << trajectory_csv(records);
}

std::string aggregate_csv(
    const std::vector<std::vector<TrajectoryPoint>>& per_seed) {
  if (per_seed.empty())
    throw Error(ErrorKind::InvalidInput, "no trajectories to aggregate");
  const std::size_t rows = per_seed.front().size();
  for (const auto& t : per_seed)
    if (t.size() != rows)
      throw Error(ErrorKind::InvalidInput, "trajectory length mismatch");

  std::ostringstream os;
  os << "k";
  for (const char* m : kMetricNames)
    os << "," << m << "_mean," << m << "_median," << m << "_var";
  os << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    os << per_seed.front()[r].k;
    for (int m = 0; m < 4; ++m) {
      std::vector<double> vals;
      vals.reserve(per_seed.size());
      for (const auto& t : per_seed) vals.push_back(metric_of(t[r], m));
      const double mean = mean_of(vals);
      os << "," << fmt17(mean) << "," << fmt17(median_of(vals)) << ","
         << fmt17(variance_of(vals, mean));
    }
    os << "\n";
  }
  return os.str();
}

void write_aggregate_csv(
    const std::vector<std::vector<TrajectoryPoint>>& per_seed,
    const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  os << aggregate_csv(per_seed);
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  throw Error(ErrorKind::InvalidInput, "no such column: " + name);
}

std::vector<double> CsvTable::column_values(const std::string& name) const {
  const int idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[idx]);
  return out;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(is, line))
    throw Error(ErrorKind::InvalidInput, "empty CSV: " + path);
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.columns.size())
      throw Error(ErrorKind::InvalidInput, "ragged CSV row in " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace vragt
