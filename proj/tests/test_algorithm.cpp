#include <doctest.h>

#include <cmath>

#include "vragt/algorithm.hpp"
#include "vragt/errors.hpp"
#include "vragt/graph.hpp"
#include "vragt/problems.hpp"

using namespace vragt;

namespace {

Digraph cycle3() {
  Digraph g(3);
  g.add_edge(1, 0);
  g.add_edge(2, 1);
  g.add_edge(0, 2);
  return g;
}

NetworkState make_state(const Eigen::MatrixXd& x, const Eigen::MatrixXd& s,
                        const Eigen::MatrixXd& z) {
  NetworkState st;
  st.x = x;
  st.s = s;
  st.z = z;
  st.s_prev = Eigen::MatrixXd::Zero(s.rows(), s.cols());
  return st;
}

RunInputs make_inputs(const Objective& problem, const WeightPair& w,
                      const EigenPair& e, double sigma2 = 0.0) {
  RunInputs in;
  in.problem = &problem;
  in.weights = &w;
  in.eig = &e;
  in.sched = default_vra_gt_schedules();
  in.pull = {NoiseChannel::Pull, sigma2, 0.0, problem.dim()};
  in.push = {NoiseChannel::Push, sigma2, 0.0, problem.dim()};
  return in;
}

}  // namespace

TEST_CASE("step_s: gamma=0.5 with s=z=0 copies the gradients") {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 2);
  Eigen::MatrixXd g(3, 2);
  g << 1, 2, 3, 4, 5, 6;
  NetworkState st = make_state(zero, zero, zero);
  step_s(st, g, 0.5, Backend::Serial);
  CHECK(st.s.isApprox(g, 0.0));
}

TEST_CASE("step_s: gamma=1 gives full replacement s = z + g") {
  Eigen::MatrixXd s(3, 2), z(3, 2), g(3, 2);
  s << 1, 1, 1, 1, 1, 1;
  z << 2, 0, -1, 3, 0.5, 0.5;
  g << 1, 2, 3, 4, 5, 6;
  NetworkState st = make_state(s, s, z);
  step_s(st, g, 1.0, Backend::Serial);
  CHECK(st.s.isApprox(z + g));
  CHECK(st.s_prev.isApprox(s, 0.0));
}

TEST_CASE("step_s: frozen 3-agent oracle values, gamma=0.8") {
  Eigen::MatrixXd s(3, 2), z(3, 2), g(3, 2);
  s << 1, 2, 3, -1, 0.5, 4;
  z << 2, 0, -1, 1, 3, 0.5;
  g << 0.25, -2, 0, 1, 2, 3;
  NetworkState st = make_state(s, s, z);
  step_s(st, g, 0.8, Backend::Serial);
  Eigen::MatrixXd expect(3, 2);
  expect << 2.05, -1.6, -0.2, 1.6, 4.5, 4.2;
  CHECK((st.s - expect).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("step_s rejects non-finite gradients") {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 1);
  Eigen::MatrixXd g(2, 1);
  g << 1.0, std::nan("");
  NetworkState st = make_state(zero, zero, zero);
  CHECK_THROWS_AS(step_s(st, g, 0.5, Backend::Serial), Error);
}

TEST_CASE("step_x: beta=0 and alpha=0 leaves x unchanged") {
  CompiledWeights cw = compile_weights(build_weights(cycle3()));
  Eigen::MatrixXd x(3, 2);
  x << 1, 0, 0, 2, -1, 1;
  NetworkState st = make_state(x, Eigen::MatrixXd::Zero(3, 2),
                               Eigen::MatrixXd::Zero(3, 2));
  step_x(st, cw, 0.0, 0.0, Eigen::MatrixXd::Zero(3, 2), Backend::Serial);
  CHECK(st.x.isApprox(x, 0.0));
}

TEST_CASE("step_x: consensus rows are a fixed point at alpha=0, no noise") {
  Digraph g = ring_plus_random(3, 1.0, 0);  // complete digraph
  CompiledWeights cw = compile_weights(build_weights(g));
  Eigen::MatrixXd x(3, 2);
  x << 1.5, -2, 1.5, -2, 1.5, -2;
  NetworkState st = make_state(x, Eigen::MatrixXd::Zero(3, 2),
                               Eigen::MatrixXd::Zero(3, 2));
  step_x(st, cw, 0.5, 0.0, Eigen::MatrixXd::Zero(3, 2), Backend::Serial);
  CHECK((st.x - x).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("step_x: frozen 3-agent oracle with noise, beta=0.5, alpha=0.1") {
  CompiledWeights cw = compile_weights(build_weights(cycle3()));
  Eigen::MatrixXd s(3, 2), z(3, 2), g(3, 2), x(3, 2), xi(3, 2);
  s << 1, 2, 3, -1, 0.5, 4;
  z << 2, 0, -1, 1, 3, 0.5;
  g << 0.25, -2, 0, 1, 2, 3;
  x << 1, 0, 0, 2, -1, 1;
  xi << 0.1, -0.2, 0.3, 0, -0.5, 0.2;
  NetworkState st = make_state(x, s, z);
  step_s(st, g, 0.8, Backend::Serial);
  step_x(st, cw, 0.5, 0.1, xi, Backend::Serial);
  Eigen::MatrixXd expect(3, 2);
  expect << 0.27, 0.66, 0.595, 1.19, -1.075, 1.23;
  CHECK((st.x - expect).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("step_z: eta=1 reduces to z = C s + noise") {
  CompiledWeights cw = compile_weights(build_weights(cycle3()));
  WeightPair w = build_weights(cycle3());
  Eigen::MatrixXd s(3, 2), z(3, 2);
  s << 1, 2, 3, -1, 0.5, 4;
  z << 2, 0, -1, 1, 3, 0.5;
  NetworkState st = make_state(Eigen::MatrixXd::Zero(3, 2), s, z);
  Eigen::MatrixXd zeta(3, 2);
  zeta << 0.2, 0.4, -0.1, 0.5, 0, -0.3;
  step_z(st, cw, 1.0, zeta, Backend::Serial);
  // unweighted noise: agent i receives zeta from its single in-neighbor
  Eigen::MatrixXd zeta_c(3, 2);
  zeta_c.row(0) = zeta.row(2);
  zeta_c.row(1) = zeta.row(0);
  zeta_c.row(2) = zeta.row(1);
  CHECK((st.z - (w.C * s + zeta_c)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("step_z: zero noise keeps phi = z - Cs at zero") {
  WeightPair w = build_weights(cycle3());
  CompiledWeights cw = compile_weights(w);
  Eigen::MatrixXd s(3, 2), s_next(3, 2);
  s << 1, 2, 3, -1, 0.5, 4;
  s_next << 2, 1, 0, 0, 1, 5;
  NetworkState st = make_state(Eigen::MatrixXd::Zero(3, 2), s_next,
                               Eigen::MatrixXd(w.C * s));
  st.s_prev = s;
  step_z(st, cw, 0.5, Eigen::MatrixXd::Zero(3, 2), Backend::Serial);
  CHECK((st.z - w.C * s_next).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("step_z: frozen 3-agent oracle, eta=0.5") {
  CompiledWeights cw = compile_weights(build_weights(cycle3()));
  Eigen::MatrixXd s(3, 2), s_next(3, 2), z(3, 2), zeta(3, 2);
  s << 1, 2, 3, -1, 0.5, 4;
  s_next << 2.05, -1.6, -0.2, 1.6, 4.5, 4.2;  // from the step_s oracle
  z << 2, 0, -1, 1, 3, 0.5;
  zeta << 0.2, 0.4, -0.1, 0.5, 0, -0.3;
  NetworkState st = make_state(Eigen::MatrixXd::Zero(3, 2), s_next, z);
  st.s_prev = s;
  step_z(st, cw, 0.5, zeta, Backend::Serial);
  Eigen::MatrixXd expect(3, 2);
  expect << 3.9, -0.35, -0.475, 0.45, 2.725, 2.65;
  CHECK((st.z - expect).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("step_z rejects eta = 0") {
  CompiledWeights cw = compile_weights(build_weights(cycle3()));
  NetworkState st = make_state(Eigen::MatrixXd::Zero(3, 2),
                               Eigen::MatrixXd::Zero(3, 2),
                               Eigen::MatrixXd::Zero(3, 2));
  CHECK_THROWS_AS(
      step_z(st, cw, 0.0, Eigen::MatrixXd::Zero(3, 2), Backend::Serial),
      Error);
}

TEST_CASE("weighted_average: ones vector gives the plain row average") {
  Eigen::MatrixXd x(2, 2);
  x << 3, 3, 3, 3;
  Eigen::VectorXd xbar = weighted_average(x, Eigen::VectorXd::Ones(2));
  CHECK(xbar(0) == doctest::Approx(3.0));
}

TEST_CASE("weighted_average: degenerate weight picks one row") {
  Eigen::MatrixXd x(2, 2);
  x << 1, 2, 9, 9;
  Eigen::VectorXd u(2);
  u << 2, 0;
  Eigen::VectorXd xbar = weighted_average(x, u);
  CHECK(xbar(0) == doctest::Approx(1.0));
  CHECK(xbar(1) == doctest::Approx(2.0));
}

TEST_CASE("weighted_average matches the dense oracle") {
  Digraph g = ring_plus_random(10, 0.3, 2);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(10, 3);
  Eigen::VectorXd oracle = x.transpose() * e.u / 10.0;
  CHECK(weighted_average(x, e.u).isApprox(oracle));
}

TEST_CASE("run: zero-noise quadratic consensus problem converges") {
  Digraph g(2);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  QuadraticObjective problem({Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()});
  RunInputs in = make_inputs(problem, w, e);
  RunOptions opt;
  opt.iterations = 5000;
  opt.record_every = 100;
  auto records = run(in, opt);
  // alpha_k ~ 0.1/k^0.9 shrinks fast, so expect slow but clear decay
  CHECK(records.back().opt_gap < 1e-2 * records.front().opt_gap);
  CHECK(records.back().consensus < 1e-3);
}

TEST_CASE("run: zero noise keeps tracking at zero and y' equal to y") {
  Digraph g = ring_plus_random(10, 0.3, 4);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  RidgeObjective problem(generate_ridge(10, 3, 2, 0.05, {1.0, 10.0}, 6));
  RunInputs in = make_inputs(problem, w, e);
  RunOptions opt;
  opt.iterations = 300;
  opt.record_every = 1;
  opt.diagnostics = true;
  auto records = run(in, opt);
  for (const auto& p : records) {
    CHECK(p.tracking <= 1e-20);
    CHECK(p.tracker_gap <= 1e-10);
  }
}

TEST_CASE("run: conservation identity holds with and without noise") {
  Digraph g = ring_plus_random(10, 0.3, 4);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  RidgeObjective problem(generate_ridge(10, 3, 2, 0.05, {1.0, 10.0}, 6));
  for (double sigma2 : {0.0, 25.0}) {
    RunInputs in = make_inputs(problem, w, e, sigma2);
    RunOptions opt;
    opt.iterations = 500;
    opt.record_every = 1;
    auto records = run(in, opt);
    for (const auto& p : records) CHECK(p.conservation_residual <= 1e-9);
  }
}

TEST_CASE("run: serial and OpenMP backends agree bitwise") {
  Digraph g = ring_plus_random(20, 0.3, 8);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  RidgeObjective problem(generate_ridge(20, 3, 2, 0.05, {1.0, 10.0}, 9));
  RunInputs in = make_inputs(problem, w, e, 25.0);
  RunOptions opt;
  opt.iterations = 400;
  opt.record_every = 7;
  opt.seed = 3;
  opt.backend = Backend::Serial;
  auto serial = run(in, opt);
  opt.backend = Backend::OpenMP;
  auto parallel = run(in, opt);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].opt_gap == parallel[i].opt_gap);
    CHECK(serial[i].consensus == parallel[i].consensus);
    CHECK(serial[i].tracking == parallel[i].tracking);
    CHECK(serial[i].conservation_residual == parallel[i].conservation_residual);
  }
}

TEST_CASE("run_r_push_pull equals run with pinned schedules, bitwise") {
  Digraph g = ring_plus_random(10, 0.3, 1);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  RidgeObjective problem(generate_ridge(10, 3, 2, 0.05, {1.0, 10.0}, 2));
  RunInputs in = make_inputs(problem, w, e, 25.0);
  RunOptions opt;
  opt.iterations = 300;
  opt.seed = 5;
  auto a = run_r_push_pull(in, 0.05, 0.01, opt);
  RunInputs pinned = in;
  pinned.sched.eta = constant_schedule(1.0);
  pinned.sched.beta = constant_schedule(0.05);
  pinned.sched.alpha = constant_schedule(0.01);
  auto b = run(pinned, opt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].opt_gap == b[i].opt_gap);
    CHECK(a[i].consensus == b[i].consensus);
    CHECK(a[i].tracking == b[i].tracking);
  }
}

TEST_CASE("run: identical seed gives identical records") {
  Digraph g = ring_plus_random(10, 0.3, 3);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  RidgeObjective problem(generate_ridge(10, 3, 2, 0.05, {1.0, 10.0}, 5));
  RunInputs in = make_inputs(problem, w, e, 1.0);
  RunOptions opt;
  opt.iterations = 200;
  opt.seed = 11;
  auto a = run(in, opt);
  auto b = run(in, opt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].opt_gap == b[i].opt_gap);
}

TEST_CASE("run throws a divergence error carrying the failing iteration") {
  Digraph g = ring_plus_random(5, 0.3, 1);
  WeightPair w = build_weights(g);
  EigenPair e = perron_vectors(w);
  RidgeObjective problem(generate_ridge(5, 3, 2, 0.05, {1.0, 10.0}, 1));
  RunInputs in = make_inputs(problem, w, e);
  in.sched.alpha = constant_schedule(1.0);  // step far beyond 2/L
  RunOptions opt;
  opt.iterations = 5000;
  try {
    run(in, opt);
    FAIL("expected divergence");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Divergence);
    CHECK(std::string(err.what()).find("k=") != std::string::npos);
  }
}
