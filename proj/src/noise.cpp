#include "vragt/noise.hpp"

#include <cmath>
#include <sstream>

#include "vragt/errors.hpp"
#include "vragt/rng.hpp"

namespace vragt {

double NoiseModel::variance_at(long k) const {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "iteration index must be >= 1");
  return sigma2 * std::pow(static_cast<double>(k), growth);
}

Eigen::VectorXd draw_noise(const NoiseModel& model, int agent, long k,
                           std::uint64_t seed) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(model.dim);
  if (model.sigma2 == 0.0) return out;
  const std::uint64_t tag = model.channel == NoiseChannel::Pull
                                ? stream_tag::kPullNoise
                                : stream_tag::kPushNoise;
  KeyedStream rng(seed, tag, static_cast<std::uint64_t>(agent),
                  static_cast<std::uint64_t>(k));
  const double sd = std::sqrt(model.variance_at(k));
  for (int c = 0; c < model.dim; ++c) out(c) = sd * rng.gaussian();
  return out;
}

ValidationReport validate_assumption3(const NoiseModel& pull,
                                      const NoiseModel& push,
                                      const ScheduleSet& sched) {
  if (pull.growth < 0.0 || push.growth < 0.0 || pull.sigma2 < 0.0 ||
      push.sigma2 < 0.0)
    throw Error(ErrorKind::UnsupportedConfiguration,
                "noise schedule parameters out of range");
  ValidationReport r;
  const double pull_exp = 2.0 * sched.beta.exponent - pull.growth;
  const double push_exp = 2.0 * sched.eta.exponent - push.growth;
  std::ostringstream d1, d2;
  d1 << "2*e_beta - q_pull = " << pull_exp;
  d2 << "2*e_eta - q_push = " << push_exp;
  r.add("sum beta^2 E||xi||^2 < inf", pull_exp > 1.0, d1.str());
  r.add("sum eta^2 E||zeta||^2 < inf", push_exp > 1.0, d2.str());
  return r;
}

}  // namespace vragt
