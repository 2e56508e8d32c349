#include "vragt/graph.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "vragt/errors.hpp"
#include "vragt/rng.hpp"

namespace vragt {

Digraph::Digraph(int n) : n_(n), in_(n), out_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidTopology, "agent count must be >= 1");
}

void Digraph::add_edge(int receiver, int sender) {
  if (receiver < 0 || receiver >= n_ || sender < 0 || sender >= n_)
    throw Error(ErrorKind::InvalidInput, "edge index out of range");
  if (receiver == sender)
    throw Error(ErrorKind::InvalidInput, "self-loops are not allowed");
  if (has_edge(receiver, sender)) return;
  in_[receiver].push_back(sender);
  out_[sender].push_back(receiver);
  ++edge_count_;
}

bool Digraph::has_edge(int receiver, int sender) const {
  const auto& nb = in_[receiver];
  return std::find(nb.begin(), nb.end(), sender) != nb.end();
}

Digraph Digraph::reversed() const {
  Digraph r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j : in_[i]) r.add_edge(j, i);
  return r;
}

Digraph ring_plus_random(int n, double p, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::InvalidTopology, "ring needs n >= 2");
  if (p < 0.0 || p > 1.0)
    throw Error(ErrorKind::InvalidInput, "probability out of [0, 1]");
  Digraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge((i + 1) % n, i);
  KeyedStream rng(seed, stream_tag::kGraph);
  // One coin flip per ordered pair, in fixed (sender, receiver) order.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      bool link = rng.uniform() < p;
      if (link && !g.has_edge(i, j)) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

// Nodes reachable from root along information flow (sender -> receiver).
int count_reachable(const Digraph& g, int root) {
  std::vector<char> seen(g.size(), 0);
  std::deque<int> queue{root};
  seen[root] = 1;
  int count = 1;
  while (!queue.empty()) {
    int j = queue.front();
    queue.pop_front();
    for (int i : g.out_neighbors(j)) {
      if (!seen[i]) {
        seen[i] = 1;
        ++count;
        queue.push_back(i);
      }
    }
  }
  return count;
}

}  // namespace

std::set<int> spanning_tree_roots(const Digraph& g) {
  std::set<int> roots;
  for (int r = 0; r < g.size(); ++r)
    if (count_reachable(g, r) == g.size()) roots.insert(r);
  return roots;
}

Assumption2Report check_assumption2(const Digraph& g_R, const Digraph& g_C) {
  if (g_R.size() != g_C.size())
    throw Error(ErrorKind::InvalidInput, "graphs have different agent counts");
  Assumption2Report report;
  report.roots_R = spanning_tree_roots(g_R);
  report.roots_Ct = spanning_tree_roots(g_C.reversed());
  std::set_intersection(
      report.roots_R.begin(), report.roots_R.end(), report.roots_Ct.begin(),
      report.roots_Ct.end(),
      std::inserter(report.intersection, report.intersection.begin()));
  report.pass = !report.roots_R.empty() && !report.roots_Ct.empty() &&
                !report.intersection.empty();
  return report;
}

WeightPair build_weights(const Digraph& g) {
  const int n = g.size();
  WeightPair w;
  w.R = Eigen::MatrixXd::Zero(n, n);
  w.C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& in = g.in_neighbors(i);
    const double rw = 1.0 / (static_cast<double>(in.size()) + 1.0);
    for (int j : in) w.R(i, j) = rw;
    w.R(i, i) = 1.0 - rw * static_cast<double>(in.size());

    const auto& out = g.out_neighbors(i);
    const double cw = 1.0 / (static_cast<double>(out.size()) + 1.0);
    for (int j : out) w.C(j, i) = cw;
    w.C(i, i) = 1.0 - cw * static_cast<double>(out.size());
  }
  return w;
}

void validate_weights(const WeightPair& w, const Digraph& g, double tol) {
  const int n = w.size();
  if (g.size() != n)
    throw Error(ErrorKind::InvalidInput, "weight/graph size mismatch");
  if ((w.R.array() < 0.0).any() || (w.C.array() < 0.0).any())
    throw Error(ErrorKind::InvalidInput, "negative weight entry");
  for (int i = 0; i < n; ++i) {
    if (std::abs(w.R.row(i).sum() - 1.0) > tol)
      throw Error(ErrorKind::InvalidInput, "R is not row stochastic");
    if (std::abs(w.C.col(i).sum() - 1.0) > tol)
      throw Error(ErrorKind::InvalidInput, "C is not column stochastic");
    if (w.R(i, i) <= 0.0 || w.C(i, i) <= 0.0)
      throw Error(ErrorKind::InvalidInput, "nonpositive diagonal entry");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool edge = g.has_edge(i, j);
      if ((w.R(i, j) > 0.0) != edge)
        throw Error(ErrorKind::InvalidInput, "R sparsity mismatch");
      if ((w.C(i, j) > 0.0) != edge)
        throw Error(ErrorKind::InvalidInput, "C sparsity mismatch");
    }
  }
}

namespace {

// Power iteration for the eigenvalue-1 eigenvector of a stochastic-like
// matrix, renormalized so that the entry sum stays n.
Eigen::VectorXd power_iterate(const Eigen::MatrixXd& A, Eigen::VectorXd x,
                              double tol, int max_iter, double* out_residual) {
  const int n = static_cast<int>(A.rows());
  x *= static_cast<double>(n) / x.sum();
  double residual = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd next = A * x;
    next *= static_cast<double>(n) / next.sum();
    residual = (A * next - next).norm();
    x = next;
    if (residual <= tol) {
      if (out_residual) *out_residual = residual;
      return x;
    }
  }
  std::ostringstream msg;
  msg << "power iteration did not converge; last residual " << residual;
  throw Error(ErrorKind::NumericalFailure, msg.str());
}

}  // namespace

EigenPair perron_vectors_from(const WeightPair& w, const Eigen::VectorXd& u0,
                              const Eigen::VectorXd& v0, double tol,
                              int max_iter) {
  EigenPair e;
  e.u = power_iterate(w.R.transpose(), u0, tol, max_iter, &e.residual_u);
  e.v = power_iterate(w.C, v0, tol, max_iter, &e.residual_v);
  if (e.u.dot(e.v) <= 0.0)
    throw Error(ErrorKind::NumericalFailure, "u'v is not positive");
  return e;
}

EigenPair perron_vectors(const WeightPair& w, double tol, int max_iter) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(w.size());
  return perron_vectors_from(w, ones, ones, tol, max_iter);
}

ContractionRadii contraction_check(const WeightPair& w, double gamma,
                                   const EigenPair& e) {
  if (gamma <= 0.0 || gamma > 1.0)
    throw Error(ErrorKind::InvalidInput, "gamma out of (0, 1]");
  const int n = w.size();
  const double dn = static_cast<double>(n);
  Eigen::MatrixXd C_gamma =
      (1.0 - gamma) * Eigen::MatrixXd::Identity(n, n) + gamma * w.C;
  Eigen::MatrixXd A = C_gamma - e.v * Eigen::RowVectorXd::Ones(n) / dn;
  Eigen::MatrixXd B = w.R - Eigen::VectorXd::Ones(n) * e.u.transpose() / dn;
  ContractionRadii r;
  r.radius_C = Eigen::EigenSolver<Eigen::MatrixXd>(A, false)
                   .eigenvalues()
                   .cwiseAbs()
                   .maxCoeff();
  r.radius_R = Eigen::EigenSolver<Eigen::MatrixXd>(B, false)
                   .eigenvalues()
                   .cwiseAbs()
                   .maxCoeff();
  return r;
}

void write_edge_list(const Digraph& g, std::ostream& os) {
  os << "n " << g.size() << "\n";
  for (int i = 0; i < g.size(); ++i)
    for (int j : g.in_neighbors(i)) os << i + 1 << " " << j + 1 << "\n";
}

Digraph read_edge_list(std::istream& is) {
  std::string header;
  int n = 0;
  if (!(is >> header >> n) || header != "n")
    throw Error(ErrorKind::InvalidInput, "edge list: bad header");
  Digraph g(n);
  int i, j;
  while (is >> i >> j) {
    if (i < 1 || i > n || j < 1 || j > n)
      throw Error(ErrorKind::InvalidInput, "edge list: index out of range");
    g.add_edge(i - 1, j - 1);
  }
  return g;
}

Digraph read_edge_list_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  return read_edge_list(is);
}

void write_edge_list_file(const Digraph& g, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  write_edge_list(g, os);
}

}  // namespace vragt
