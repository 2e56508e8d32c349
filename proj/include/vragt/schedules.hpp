#pragma once

#include <string>
#include <vector>

namespace vragt {

// value(k) = min(1, a / (c + k^e)); c = 0 gives the pure power law a/k^e.
struct PowerLawSchedule {
  double amplitude = 1.0;  // a > 0
  double exponent = 0.0;   // e >= 0
  double offset = 0.0;     // c >= 0

  double operator()(long k) const;
  bool is_constant() const { return exponent == 0.0 && offset == 0.0; }
};

PowerLawSchedule constant_schedule(double value);

struct ScheduleSet {
  PowerLawSchedule alpha;  // step size
  PowerLawSchedule beta;   // pull mixing factor
  PowerLawSchedule eta;    // push aggregation factor
  double gamma = 0.8;      // tracker mixing factor, in (0, 1]
};

// Experiment defaults: beta = alpha-form 0.1/(1+k^0.6), alpha = 0.1/(1+k^0.9),
// eta matching beta's form, gamma = 0.8.
ScheduleSet default_vra_gt_schedules();

struct ConditionResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;
  bool pass = true;

  void add(const std::string& name, bool ok, const std::string& detail = "");
};

// Almost-sure convergence hypotheses, checked by exponent arithmetic on the
// asymptotic power-law exponents:
//   e_beta in (1/2, 1], e_eta in (1/2, 1], e_alpha <= 1,
//   2 e_alpha - e_beta > 1, e_alpha > e_beta.
ValidationReport validate_theorem2(const ScheduleSet& s);

// Mean-square rate hypotheses: e_alpha, e_beta, e_eta in (0.5, 1),
// e_alpha > (1 + e_beta)/2, amplitudes in (0, 1], gamma < 1. Returns the
// predicted rate exponent min{2 e_beta - e_alpha, e_beta + e_eta - e_alpha}.
struct Theorem3Result {
  ValidationReport report;
  double rate_exponent = 0.0;
};
Theorem3Result validate_theorem3(const ScheduleSet& s);

}  // namespace vragt
