#include "vragt/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vragt/errors.hpp"

namespace vragt {

double PowerLawSchedule::operator()(long k) const {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "iteration index must be >= 1");
  double v = amplitude / (offset + std::pow(static_cast<double>(k), exponent));
  return std::min(v, 1.0);
}

PowerLawSchedule constant_schedule(double value) {
  PowerLawSchedule s;
  s.amplitude = value;
  s.exponent = 0.0;
  s.offset = 0.0;
  return s;  // value(k) = a / (0 + k^0) = a
}

ScheduleSet default_vra_gt_schedules() {
  ScheduleSet s;
  s.alpha = {0.1, 0.9, 1.0};
  s.beta = {0.1, 0.6, 1.0};
  s.eta = {0.1, 0.6, 1.0};
  s.gamma = 0.8;
  return s;
}

void ValidationReport::add(const std::string& name, bool ok,
                           const std::string& detail) {
  conditions.push_back({name, ok, detail});
  pass = pass && ok;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_positive(const PowerLawSchedule& s, const char* label) {
  if (s.amplitude <= 0.0 || s.exponent < 0.0 || s.offset < 0.0) {
    throw Error(ErrorKind::UnsupportedConfiguration,
                std::string(label) + ": schedule parameters out of range");
  }
}

}  // namespace

ValidationReport validate_theorem2(const ScheduleSet& s) {
  check_positive(s.alpha, "alpha");
  check_positive(s.beta, "beta");
  check_positive(s.eta, "eta");
  const double ea = s.alpha.exponent;
  const double eb = s.beta.exponent;
  const double ee = s.eta.exponent;
  ValidationReport r;
  r.add("gamma in (0,1)", s.gamma > 0.0 && s.gamma < 1.0, fmt(s.gamma));
  r.add("e_beta in (1/2,1]", eb > 0.5 && eb <= 1.0, fmt(eb));
  r.add("e_eta in (1/2,1]", ee > 0.5 && ee <= 1.0, fmt(ee));
  r.add("e_alpha <= 1 (sum alpha = inf)", ea <= 1.0, fmt(ea));
  r.add("2 e_alpha - e_beta > 1 (sum alpha^2/beta < inf)", 2.0 * ea - eb > 1.0,
        fmt(2.0 * ea - eb));
  r.add("e_alpha > e_beta (alpha/beta -> 0)", ea > eb,
        "e_alpha=" + fmt(ea) + " e_beta=" + fmt(eb));
  return r;
}

Theorem3Result validate_theorem3(const ScheduleSet& s) {
  check_positive(s.alpha, "alpha");
  check_positive(s.beta, "beta");
  check_positive(s.eta, "eta");
  const double ea = s.alpha.exponent;
  const double eb = s.beta.exponent;
  const double ee = s.eta.exponent;
  Theorem3Result out;
  ValidationReport& r = out.report;
  r.add("gamma < 1", s.gamma > 0.0 && s.gamma < 1.0, fmt(s.gamma));
  r.add("amplitudes in (0,1]",
        s.alpha.amplitude <= 1.0 && s.beta.amplitude <= 1.0 &&
            s.eta.amplitude <= 1.0,
        "");
  r.add("e_alpha in (0.5,1)", ea > 0.5 && ea < 1.0, fmt(ea));
  r.add("e_beta in (0.5,1)", eb > 0.5 && eb < 1.0, fmt(eb));
  r.add("e_eta in (0.5,1)", ee > 0.5 && ee < 1.0, fmt(ee));
  r.add("e_alpha > (1+e_beta)/2", ea > (1.0 + eb) / 2.0,
        "e_alpha=" + fmt(ea) + " bound=" + fmt((1.0 + eb) / 2.0));
  out.rate_exponent = std::min(2.0 * eb - ea, eb + ee - ea);
  return out;
}

}  // namespace vragt
