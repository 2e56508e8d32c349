#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "vragt/graph.hpp"
#include "vragt/noise.hpp"
#include "vragt/problems.hpp"
#include "vragt/schedules.hpp"

namespace vragt {

enum class Backend { Serial, OpenMP };

// Per-agent triplet (x, s, z) as n x d row matrices. y_k = s - s_prev is
// never stored separately.
struct NetworkState {
  Eigen::MatrixXd x;
  Eigen::MatrixXd s;
  Eigen::MatrixXd z;
  Eigen::MatrixXd s_prev;
  long k = 1;
};

// Row-compressed weights with fixed neighbor order, so per-row sums are
// bitwise identical for any thread count.
struct CompiledWeights {
  struct Entry {
    int j;
    double w;
  };
  int n = 0;
  std::vector<std::vector<Entry>> R_rows;  // all nonzeros incl. diagonal
  std::vector<std::vector<Entry>> C_rows;
  std::vector<std::vector<int>> R_in;  // off-diagonal senders per row
  std::vector<std::vector<int>> C_in;
};

CompiledWeights compile_weights(const WeightPair& w);

// s <- (1-gamma) s + gamma z + grads, keeping the old s in s_prev.
void step_s(NetworkState& st, const Eigen::MatrixXd& grads, double gamma,
            Backend backend);

// x_i <- (1-beta) x_i + beta (sum_j R_ij x_j + sum_{j in N_in} R_ij xi_j)
//        - alpha (s_i - s_prev_i)
// pull_noise row j holds xi_{j,k}; the self term carries no noise.
void step_x(NetworkState& st, const CompiledWeights& w, double beta,
            double alpha, const Eigen::MatrixXd& pull_noise, Backend backend);

// z_i <- (1-eta) z_i + sum_j C_ij (s_j - (1-eta) s_prev_j)
//        + eta sum_{j in N_in_C} zeta_j
// push_noise rows are unweighted, matching the message form. eta = 0 is
// rejected (division in the message form).
void step_z(NetworkState& st, const CompiledWeights& w, double eta,
            const Eigen::MatrixXd& push_noise, Backend backend);

Eigen::VectorXd weighted_average(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXd& u);

struct TrajectoryPoint {
  long k = 0;
  double opt_gap = 0.0;                // sum_j ||x_j - x*||^2
  double consensus = 0.0;              // ||x - 1 xbar'||^2, xbar = u'x/n
  double tracking = 0.0;               // ||z - C s||^2
  double conservation_residual = 0.0;  // ||1'(s+ - s) - g 1'(z - Cs) - 1'g||
  double tracker_gap = 0.0;            // ||y - y'||, NaN if diagnostics off
};

struct RunOptions {
  long iterations = 1000;
  int record_every = 10;
  std::uint64_t seed = 0;
  bool diagnostics = false;
  Backend backend = Backend::OpenMP;
  double divergence_cap = 1e12;
  bool randomize_x1 = true;  // x_1 rows i.i.d. uniform [0,1]^d per seed
};

struct RunInputs {
  const Objective* problem = nullptr;
  const WeightPair* weights = nullptr;
  const EigenPair* eig = nullptr;
  ScheduleSet sched;
  NoiseModel pull;
  NoiseModel push;
};

// Full Algorithm-1 loop: per iteration step_s, step_x, step_z in that
// order; metrics recorded at k = 1, every stride, every power of ten and T.
// Throws Divergence (with the failing k in the message) on non-finite or
// capped state.
std::vector<TrajectoryPoint> run(const RunInputs& in, const RunOptions& opt);

// R-Push-Pull special case: eta_k = 1, beta_k = beta, alpha_k = alpha.
std::vector<TrajectoryPoint> run_r_push_pull(const RunInputs& in, double beta,
                                             double alpha,
                                             const RunOptions& opt);

}  // namespace vragt
