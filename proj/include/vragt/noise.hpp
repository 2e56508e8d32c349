#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "vragt/schedules.hpp"

namespace vragt {

enum class NoiseChannel { Pull, Push };

// Zero-mean Gaussian information-sharing noise with variance schedule
// sigma2 * k^growth. growth = 0 is the variance-bounded regime; growth > 0
// models variance-unbounded noise (Assumption 3 only needs weighted
// summability, not boundedness).
struct NoiseModel {
  NoiseChannel channel = NoiseChannel::Pull;
  double sigma2 = 0.0;
  double growth = 0.0;
  int dim = 1;

  double variance_at(long k) const;
};

// One message-noise vector for (agent, k). Deterministic in
// (seed, channel, agent, k); draws at distinct keys are independent.
Eigen::VectorXd draw_noise(const NoiseModel& model, int agent, long k,
                           std::uint64_t seed);

// Assumption-3 summability by exponent arithmetic:
//   2 e_beta - growth_pull > 1 and 2 e_eta - growth_push > 1.
ValidationReport validate_assumption3(const NoiseModel& pull,
                                      const NoiseModel& push,
                                      const ScheduleSet& sched);

}  // namespace vragt
