#include <doctest.h>

#include <cmath>

#include "vragt/errors.hpp"
#include "vragt/noise.hpp"

using namespace vragt;

TEST_CASE("zero base variance draws the zero vector") {
  NoiseModel m{NoiseChannel::Pull, 0.0, 0.0, 4};
  CHECK(draw_noise(m, 3, 17, 9).isZero());
}

TEST_CASE("draws are deterministic per (seed, channel, agent, k)") {
  NoiseModel m{NoiseChannel::Push, 2.0, 0.0, 3};
  CHECK(draw_noise(m, 1, 5, 7) .isApprox( draw_noise(m, 1, 5, 7), 0.0));
  CHECK_FALSE(draw_noise(m, 1, 5, 7).isApprox(draw_noise(m, 1, 6, 7), 0.0));
  CHECK_FALSE(draw_noise(m, 1, 5, 7).isApprox(draw_noise(m, 2, 5, 7), 0.0));
  CHECK_FALSE(draw_noise(m, 1, 5, 7).isApprox(draw_noise(m, 1, 5, 8), 0.0));
}

TEST_CASE("pull and push channels are distinct for the same key") {
  NoiseModel pull{NoiseChannel::Pull, 1.0, 0.0, 2};
  NoiseModel push{NoiseChannel::Push, 1.0, 0.0, 2};
  CHECK_FALSE(draw_noise(pull, 0, 1, 0).isApprox(draw_noise(push, 0, 1, 0), 0.0));
}

TEST_CASE("sample variance at sigma2 = 25 is within 5%") {
  NoiseModel m{NoiseChannel::Pull, 25.0, 0.0, 1};
  const int N = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < N; ++i) {
    const double x = draw_noise(m, i, 1, 1234)(0);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / N;
  const double var = sumsq / N - mean * mean;
  CHECK(var >= 23.75);
  CHECK(var <= 26.25);
  // empirical mean within 4 sigma / sqrt(N)
  CHECK(std::abs(mean) <= 4.0 * 5.0 / std::sqrt(static_cast<double>(N)));
}

TEST_CASE("growth schedule scales variance like k^q") {
  NoiseModel m{NoiseChannel::Push, 1.0, 0.3, 1};
  auto sample_var = [&](long k) {
    const int N = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < N; ++i) {
      const double x = draw_noise(m, i, k, 99)(0);
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / N;
    return sumsq / N - mean * mean;
  };
  const double ratio = sample_var(10000) / sample_var(100);
  const double expected = std::pow(100.0, 0.3);
  CHECK(ratio >= 0.9 * expected);
  CHECK(ratio <= 1.1 * expected);
}

TEST_CASE("draws at distinct keys are empirically uncorrelated") {
  NoiseModel m{NoiseChannel::Pull, 1.0, 0.0, 1};
  const int N = 100000;
  double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < N; ++i) {
    const double x = draw_noise(m, i, 1, 5)(0);
    const double y = draw_noise(m, i, 2, 5)(0);
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / N - (sx / N) * (sy / N);
  const double corr = cov / std::sqrt((sxx / N - (sx / N) * (sx / N)) *
                                      (syy / N - (sy / N) * (sy / N)));
  CHECK(std::abs(corr) <= 0.02);
}

TEST_CASE("assumption 3 validator: exponent arithmetic") {
  NoiseModel pull{NoiseChannel::Pull, 1.0, 0.0, 1};
  NoiseModel push{NoiseChannel::Push, 1.0, 0.0, 1};
  ScheduleSet s = default_vra_gt_schedules();

  SUBCASE("beta ~ k^-0.6, q = 0 passes") {
    CHECK(validate_assumption3(pull, push, s).pass);
  }
  SUBCASE("beta ~ k^-0.6, q = 0.1 passes (exponent 1.1)") {
    pull.growth = 0.1;
    push.growth = 0.1;
    CHECK(validate_assumption3(pull, push, s).pass);
  }
  SUBCASE("beta ~ k^-0.5, q = 0 fails (harmonic boundary)") {
    s.beta.exponent = 0.5;
    auto r = validate_assumption3(pull, push, s);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.conditions[0].pass);
    CHECK(r.conditions[1].pass);
  }
}

TEST_CASE("assumption 3 exponent verdicts agree with partial sums") {
  // numerical cross-check: sum_k beta_k^2 k^q to 1e7 terms
  auto partial_sum = [](double e_beta, double q, long terms) {
    double s = 0.0;
    for (long k = 1; k <= terms; ++k) {
      const double beta = 1.0 / std::pow(static_cast<double>(k), e_beta);
      s += beta * beta * std::pow(static_cast<double>(k), q);
    }
    return s;
  };
  // convergent case: exponent 1.1 has tail fraction ~0.06 at 1e7 terms
  const double conv_head = partial_sum(0.6, 0.1, 1000000);
  const double conv_full = partial_sum(0.6, 0.1, 10000000);
  CHECK((conv_full - conv_head) / conv_full < 0.08);
  // divergent harmonic boundary keeps growing (~0.14 per decade)
  const double div_head = partial_sum(0.5, 0.0, 1000000);
  const double div_full = partial_sum(0.5, 0.0, 10000000);
  CHECK((div_full - div_head) / div_full > 0.12);
}
