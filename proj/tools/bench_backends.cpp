// Compares the serial reference kernels against the OpenMP kernels on the
// ring-plus-random topology and checks that the trajectories agree bitwise.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "vragt/algorithm.hpp"
#include "vragt/graph.hpp"
#include "vragt/problems.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace vragt;

namespace {

double time_run(const RunInputs& in, Backend backend, long T,
                std::vector<TrajectoryPoint>* out) {
  RunOptions opt;
  opt.iterations = T;
  opt.record_every = 100;
  opt.seed = 42;
  opt.backend = backend;
  const auto t0 = std::chrono::steady_clock::now();
  *out = run(in, opt);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 100;
  const long T = argc > 2 ? std::atol(argv[2]) : 2000;

  Digraph g = ring_plus_random(n, 0.3, 1);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  RidgeObjective problem(generate_ridge(n, 3, 2, 0.05, {1.0, 10.0}, 7));

  RunInputs in;
  in.problem = &problem;
  in.weights = &w;
  in.eig = &e;
  in.sched = default_vra_gt_schedules();
  in.pull = {NoiseChannel::Pull, 25.0, 0.0, 2};
  in.push = {NoiseChannel::Push, 25.0, 0.0, 2};

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled at build time\n");
#endif
  std::printf("n=%d T=%ld\n", n, T);

  std::vector<TrajectoryPoint> serial_records, omp_records;
  const double ts = time_run(in, Backend::Serial, T, &serial_records);
  const double tp = time_run(in, Backend::OpenMP, T, &omp_records);

  std::printf("serial : %8.3fs  (%.0f iter/s)\n", ts, T / ts);
  std::printf("openmp : %8.3fs  (%.0f iter/s)  speedup %.2fx\n", tp, T / tp,
              ts / tp);

  bool identical = serial_records.size() == omp_records.size();
  for (std::size_t i = 0; identical && i < serial_records.size(); ++i) {
    const auto& a = serial_records[i];
    const auto& b = omp_records[i];
    identical = a.k == b.k && a.opt_gap == b.opt_gap &&
                a.consensus == b.consensus && a.tracking == b.tracking &&
                a.conservation_residual == b.conservation_residual;
  }
  std::printf("trajectories bitwise identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
