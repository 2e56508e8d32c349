#include "vragt/algorithm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "vragt/errors.hpp"
#include "vragt/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vragt {

CompiledWeights compile_weights(const WeightPair& w) {
  const int n = w.size();
  CompiledWeights cw;
  cw.n = n;
  cw.R_rows.resize(n);
  cw.C_rows.resize(n);
  cw.R_in.resize(n);
  cw.C_in.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (w.R(i, j) != 0.0) {
        cw.R_rows[i].push_back({j, w.R(i, j)});
        if (j != i) cw.R_in[i].push_back(j);
      }
      if (w.C(i, j) != 0.0) {
        cw.C_rows[i].push_back({j, w.C(i, j)});
        if (j != i) cw.C_in[i].push_back(j);
      }
    }
  }
  return cw;
}

void step_s(NetworkState& st, const Eigen::MatrixXd& grads, double gamma,
            Backend backend) {
  if (!grads.allFinite())
    throw Error(ErrorKind::Divergence,
                "non-finite gradient at k=" + std::to_string(st.k));
  const int n = static_cast<int>(st.s.rows());
  const int d = static_cast<int>(st.s.cols());
  st.s_prev = st.s;
  const bool par = backend == Backend::OpenMP;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c)
      st.s(i, c) = (1.0 - gamma) * st.s_prev(i, c) + gamma * st.z(i, c) +
                   grads(i, c);
}

void step_x(NetworkState& st, const CompiledWeights& w, double beta,
            double alpha, const Eigen::MatrixXd& pull_noise, Backend backend) {
  const int n = w.n;
  const int d = static_cast<int>(st.x.cols());
  Eigen::MatrixXd next(n, d);
  const bool par = backend == Backend::OpenMP;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) {
      double mix = 0.0;
      for (const auto& e : w.R_rows[i]) mix += e.w * st.x(e.j, c);
      double noise = 0.0;
      for (const auto& e : w.R_rows[i])
        if (e.j != i) noise += e.w * pull_noise(e.j, c);
      next(i, c) = (1.0 - beta) * st.x(i, c) + beta * (mix + noise) -
                   alpha * (st.s(i, c) - st.s_prev(i, c));
    }
  }
  st.x.swap(next);
}

void step_z(NetworkState& st, const CompiledWeights& w, double eta,
            const Eigen::MatrixXd& push_noise, Backend backend) {
  if (eta <= 0.0)
    throw Error(ErrorKind::InvalidConfiguration,
                "eta must be positive (message form divides by eta)");
  const int n = w.n;
  const int d = static_cast<int>(st.z.cols());
  Eigen::MatrixXd next(n, d);
  const bool par = backend == Backend::OpenMP;
#pragma omp parallel for if (par) schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) {
      double agg = 0.0;
      for (const auto& e : w.C_rows[i])
        agg += e.w * (st.s(e.j, c) - (1.0 - eta) * st.s_prev(e.j, c));
      double noise = 0.0;
      for (int j : w.C_in[i]) noise += push_noise(j, c);
      next(i, c) = (1.0 - eta) * st.z(i, c) + agg + eta * noise;
    }
  }
  st.z.swap(next);
}

Eigen::VectorXd weighted_average(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXd& u) {
  if (u.size() != x.rows())
    throw Error(ErrorKind::InvalidInput, "eigenvector/state size mismatch");
  return x.transpose() * u / static_cast<double>(x.rows());
}

namespace {

bool record_at(long k, long T, int stride) {
  if (k == 1 || k == T) return true;
  if (stride > 0 && k % stride == 0) return true;
  for (long p = 10; p <= k; p *= 10)
    if (p == k) return true;
  return false;
}

void check_state(const NetworkState& st, double cap) {
  auto bad = [cap](const Eigen::MatrixXd& m) {
    return !m.allFinite() || m.cwiseAbs().maxCoeff() > cap;
  };
  if (bad(st.x) || bad(st.s) || bad(st.z)) {
    throw Error(ErrorKind::Divergence,
                "state diverged at k=" + std::to_string(st.k));
  }
}

}  // namespace

std::vector<TrajectoryPoint> run(const RunInputs& in, const RunOptions& opt) {
  const Objective& problem = *in.problem;
  const int n = problem.agents();
  const int d = problem.dim();
  if (in.weights->size() != n)
    throw Error(ErrorKind::InvalidInput, "weights/problem size mismatch");

  const CompiledWeights cw = compile_weights(*in.weights);
  NoiseModel pull = in.pull;
  NoiseModel push = in.push;
  pull.channel = NoiseChannel::Pull;
  push.channel = NoiseChannel::Push;
  pull.dim = push.dim = d;

  NetworkState st;
  st.x = Eigen::MatrixXd::Zero(n, d);
  if (opt.randomize_x1) {
    for (int i = 0; i < n; ++i) {
      KeyedStream rng(opt.seed, stream_tag::kInit,
                      static_cast<std::uint64_t>(i));
      for (int c = 0; c < d; ++c) st.x(i, c) = rng.uniform();
    }
  }
  st.s = Eigen::MatrixXd::Zero(n, d);
  st.z = Eigen::MatrixXd::Zero(n, d);  // s_1 = z_1
  st.s_prev = Eigen::MatrixXd::Zero(n, d);

  const auto x_star = problem.optimum();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  Eigen::MatrixXd grads(n, d);
  Eigen::MatrixXd g_prev, y_prime, y_buf;
  Eigen::MatrixXd pull_noise = Eigen::MatrixXd::Zero(n, d);
  Eigen::MatrixXd push_noise = Eigen::MatrixXd::Zero(n, d);

  std::vector<TrajectoryPoint> records;
  const bool par = opt.backend == Backend::OpenMP;

  for (long k = 1; k <= opt.iterations; ++k) {
    st.k = k;
    const double beta_k = in.sched.beta(k);
    const double alpha_k = in.sched.alpha(k);
    const double eta_k = in.sched.eta(k);
    const double gamma = in.sched.gamma;

#pragma omp parallel for if (par) schedule(static)
    for (int i = 0; i < n; ++i)
      grads.row(i) = problem.grad(i, st.x.row(i).transpose()).transpose();

    if (opt.diagnostics) {
      if (k == 1) {
        y_prime = grads;  // y'_1 = g_1
      } else {
        // y'_{k} = C_gamma y'_{k-1} + g_k - g_{k-1}
        y_buf.resize(n, d);
        for (int i = 0; i < n; ++i) {
          for (int c = 0; c < d; ++c) {
            double mix = 0.0;
            for (const auto& e : cw.C_rows[i]) mix += e.w * y_prime(e.j, c);
            y_buf(i, c) = (1.0 - gamma) * y_prime(i, c) + gamma * mix +
                          grads(i, c) - g_prev(i, c);
          }
        }
        y_prime.swap(y_buf);
      }
      g_prev = grads;
    }

    step_s(st, grads, gamma, opt.backend);  // s = s_{k+1}, s_prev = s_k

    if (record_at(k, opt.iterations, opt.record_every)) {
      TrajectoryPoint p;
      p.k = k;
      if (x_star) {
        p.opt_gap =
            (st.x.rowwise() - x_star->transpose()).squaredNorm();
      } else {
        p.opt_gap = nan;
      }
      Eigen::VectorXd xbar = weighted_average(st.x, in.eig->u);
      p.consensus = (st.x.rowwise() - xbar.transpose()).squaredNorm();
      Eigen::MatrixXd cs = in.weights->C * st.s_prev;
      p.tracking = (st.z - cs).squaredNorm();
      Eigen::RowVectorXd resid =
          (st.s - st.s_prev).colwise().sum() -
          gamma * (st.z - cs).colwise().sum() - grads.colwise().sum();
      p.conservation_residual = resid.norm();
      p.tracker_gap =
          opt.diagnostics ? (st.s - st.s_prev - y_prime).norm() : nan;
      records.push_back(p);
    }

    if (pull.sigma2 > 0.0) {
#pragma omp parallel for if (par) schedule(static)
      for (int i = 0; i < n; ++i)
        pull_noise.row(i) = draw_noise(pull, i, k, opt.seed).transpose();
    }
    step_x(st, cw, beta_k, alpha_k, pull_noise, opt.backend);

    if (push.sigma2 > 0.0) {
#pragma omp parallel for if (par) schedule(static)
      for (int i = 0; i < n; ++i)
        push_noise.row(i) = draw_noise(push, i, k + 1, opt.seed).transpose();
    }
    step_z(st, cw, eta_k, push_noise, opt.backend);

    check_state(st, opt.divergence_cap);
  }
  return records;
}

std::vector<TrajectoryPoint> run_r_push_pull(const RunInputs& in, double beta,
                                             double alpha,
                                             const RunOptions& opt) {
  RunInputs pinned = in;
  pinned.sched.eta = constant_schedule(1.0);
  pinned.sched.beta = constant_schedule(beta);
  pinned.sched.alpha = constant_schedule(alpha);
  return run(pinned, opt);
}

}  // namespace vragt
