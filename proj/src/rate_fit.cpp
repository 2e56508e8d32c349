#include "vragt/rate_fit.hpp"

#include <cmath>

#include "vragt/errors.hpp"

namespace vragt {

RateFit fit_rate(const std::vector<double>& ks, const std::vector<double>& ys,
                 double k_lo, double k_hi) {
  if (ks.size() != ys.size())
    throw Error(ErrorKind::InvalidInput, "series length mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < k_lo || ks[i] > k_hi) continue;
    if (!(ys[i] > 0.0) || !std::isfinite(ys[i])) continue;
    lx.push_back(std::log(ks[i]));
    ly.push_back(std::log(ys[i]));
  }
  const int m = static_cast<int>(lx.size());
  if (m < 8)
    throw Error(ErrorKind::InsufficientData,
                "rate fit needs >= 8 points in window, got " +
                    std::to_string(m));
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0)
    throw Error(ErrorKind::InsufficientData, "degenerate abscissa in window");
  RateFit fit;
  fit.k_lo = k_lo;
  fit.k_hi = k_hi;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.points = m;
  return fit;
}

}  // namespace vragt
