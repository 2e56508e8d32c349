#pragma once

#include <vector>

namespace vragt {

struct RateFit {
  double k_lo = 0.0;
  double k_hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

// Least-squares line on (log k, log y) over the checkpoints with
// k in [k_lo, k_hi] and y > 0. Throws InsufficientData below 8 points.
RateFit fit_rate(const std::vector<double>& ks, const std::vector<double>& ys,
                 double k_lo, double k_hi);

}  // namespace vragt
