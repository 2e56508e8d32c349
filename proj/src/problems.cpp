#include "vragt/problems.hpp"

#include <Eigen/Eigenvalues>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "vragt/errors.hpp"
#include "vragt/rng.hpp"

namespace vragt {

RidgeInstance generate_ridge(int n, int d1, int d, double r, Box box,
                             std::uint64_t seed) {
  if (n < 1 || d1 < 1 || d < 1 || r < 0.0)
    throw Error(ErrorKind::InvalidInput, "bad ridge parameters");
  RidgeInstance inst;
  inst.r = r;
  inst.x_tilde.resize(d);
  if (d == 1) {
    inst.x_tilde(0) = 0.5 * (box.lo + box.hi);
  } else {
    for (int j = 0; j < d; ++j)
      inst.x_tilde(j) = box.lo + (box.hi - box.lo) * static_cast<double>(j) /
                                     static_cast<double>(d - 1);
  }
  inst.M.reserve(n);
  inst.v.reserve(n);
  for (int i = 0; i < n; ++i) {
    KeyedStream rng(seed, stream_tag::kProblem, static_cast<std::uint64_t>(i));
    Eigen::MatrixXd Mi(d1, d);
    for (int row = 0; row < d1; ++row)
      for (int col = 0; col < d; ++col) Mi(row, col) = rng.uniform();
    Eigen::VectorXd nu(d1);
    for (int row = 0; row < d1; ++row) nu(row) = rng.gaussian();
    inst.M.push_back(Mi);
    inst.v.push_back(Mi * inst.x_tilde + nu);
  }
  return inst;
}

namespace {

void check_agent_point(const RidgeInstance& inst, int agent,
                       const Eigen::VectorXd& x) {
  if (agent < 0 || agent >= inst.agents())
    throw Error(ErrorKind::InvalidInput, "agent index out of range");
  if (x.size() != inst.dim())
    throw Error(ErrorKind::InvalidInput, "point dimension mismatch");
}

}  // namespace

double ridge_value(const RidgeInstance& inst, int agent,
                   const Eigen::VectorXd& x) {
  check_agent_point(inst, agent, x);
  return (inst.M[agent] * x - inst.v[agent]).squaredNorm() +
         inst.r * x.squaredNorm();
}

Eigen::VectorXd ridge_grad(const RidgeInstance& inst, int agent,
                           const Eigen::VectorXd& x) {
  check_agent_point(inst, agent, x);
  return 2.0 * inst.M[agent].transpose() * (inst.M[agent] * x - inst.v[agent]) +
         2.0 * inst.r * x;
}

Eigen::VectorXd solve_optimum(const RidgeInstance& inst) {
  const int d = inst.dim();
  const int n = inst.agents();
  Eigen::MatrixXd A = static_cast<double>(n) * inst.r *
                      Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n; ++i) {
    A += inst.M[i].transpose() * inst.M[i];
    b += inst.M[i].transpose() * inst.v[i];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible())
    throw Error(ErrorKind::NumericalFailure,
                "normal equations are singular (r = 0 and rank-deficient data)");
  Eigen::VectorXd x_star = lu.solve(b);
  Eigen::VectorXd total_grad = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n; ++i) total_grad += ridge_grad(inst, i, x_star);
  if (total_grad.norm() > 1e-8)
    throw Error(ErrorKind::NumericalFailure,
                "optimum residual check failed: ||sum grad|| = " +
                    std::to_string(total_grad.norm()));
  return x_star;
}

SmoothnessConstants smoothness_constants(const RidgeInstance& inst) {
  const int d = inst.dim();
  double lmax = 0.0;
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(d, d);
  for (const auto& Mi : inst.M) {
    Eigen::MatrixXd gram = Mi.transpose() * Mi;
    total += gram;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    lmax = std::max(lmax, es.eigenvalues().maxCoeff());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(total);
  SmoothnessConstants c;
  c.L = 2.0 * (lmax + inst.r);
  c.mu = 2.0 * (es.eigenvalues().minCoeff() / inst.agents() + inst.r);
  return c;
}

RidgeObjective::RidgeObjective(RidgeInstance inst)
    : inst_(std::move(inst)), x_star_(solve_optimum(inst_)) {}

double RidgeObjective::value(int agent, const Eigen::VectorXd& x) const {
  return ridge_value(inst_, agent, x);
}

Eigen::VectorXd RidgeObjective::grad(int agent, const Eigen::VectorXd& x) const {
  return ridge_grad(inst_, agent, x);
}

QuadraticObjective::QuadraticObjective(std::vector<Eigen::VectorXd> targets)
    : targets_(std::move(targets)) {
  if (targets_.empty())
    throw Error(ErrorKind::InvalidInput, "need at least one agent");
}

double QuadraticObjective::value(int agent, const Eigen::VectorXd& x) const {
  return (x - targets_[agent]).squaredNorm();
}

Eigen::VectorXd QuadraticObjective::grad(int agent,
                                         const Eigen::VectorXd& x) const {
  return 2.0 * (x - targets_[agent]);
}

std::optional<Eigen::VectorXd> QuadraticObjective::optimum() const {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(targets_.front().size());
  for (const auto& t : targets_) mean += t;
  return mean / static_cast<double>(targets_.size());
}

void write_ridge(const RidgeInstance& inst, std::ostream& os) {
  os << "ridge " << inst.agents() << " " << inst.d1() << " " << inst.dim()
     << " " << std::setprecision(17) << inst.r << "\n";
  os << std::setprecision(17);
  for (int i = 0; i < inst.agents(); ++i) {
    for (int row = 0; row < inst.d1(); ++row) {
      for (int col = 0; col < inst.dim(); ++col) {
        if (col) os << " ";
        os << inst.M[i](row, col);
      }
      os << "\n";
    }
    for (int row = 0; row < inst.d1(); ++row) {
      if (row) os << " ";
      os << inst.v[i](row);
    }
    os << "\n";
  }
}

RidgeInstance read_ridge(std::istream& is) {
  std::string header;
  int n, d1, d;
  double r;
  if (!(is >> header >> n >> d1 >> d >> r) || header != "ridge")
    throw Error(ErrorKind::InvalidInput, "problem file: bad header");
  RidgeInstance inst;
  inst.r = r;
  inst.x_tilde = Eigen::VectorXd::Zero(d);  // not part of the wire format
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd Mi(d1, d);
    for (int row = 0; row < d1; ++row)
      for (int col = 0; col < d; ++col)
        if (!(is >> Mi(row, col)))
          throw Error(ErrorKind::InvalidInput, "problem file: truncated M");
    Eigen::VectorXd vi(d1);
    for (int row = 0; row < d1; ++row)
      if (!(is >> vi(row)))
        throw Error(ErrorKind::InvalidInput, "problem file: truncated v");
    inst.M.push_back(Mi);
    inst.v.push_back(vi);
  }
  return inst;
}

RidgeInstance read_ridge_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  return read_ridge(is);
}

void write_ridge_file(const RidgeInstance& inst, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  write_ridge(inst, os);
}

}  // namespace vragt
