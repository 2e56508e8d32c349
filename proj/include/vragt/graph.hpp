#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vragt {

// Directed communication topology. An edge (i, j) means "agent j can send
// information to agent i", so j is an in-neighbor of i. Agents are
// 0-indexed internally; the edge-list file format is 1-indexed.
class Digraph {
 public:
  explicit Digraph(int n);

  int size() const { return n_; }

  // Throws InvalidInput on self-loops or out-of-range indices.
  void add_edge(int receiver, int sender);
  bool has_edge(int receiver, int sender) const;
  std::size_t edge_count() const { return edge_count_; }

  // Agents that can send to i.
  const std::vector<int>& in_neighbors(int i) const { return in_[i]; }
  // Agents that i can send to.
  const std::vector<int>& out_neighbors(int i) const { return out_[i]; }

  // Reverses the information-flow direction of every edge.
  Digraph reversed() const;

 private:
  int n_;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
  std::size_t edge_count_ = 0;
};

// Row-stochastic R and column-stochastic C on the same agent set.
struct WeightPair {
  Eigen::MatrixXd R;
  Eigen::MatrixXd C;

  int size() const { return static_cast<int>(R.rows()); }
};

// Perron vectors: u'R = u' with u'1 = n, and Cv = v with 1'v = n.
struct EigenPair {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double residual_u = 0.0;
  double residual_v = 0.0;
};

struct Assumption2Report {
  std::set<int> roots_R;
  std::set<int> roots_Ct;
  std::set<int> intersection;
  bool pass = false;
};

// Directed cycle 0->1->...->n-1->0 plus each remaining ordered pair with
// independent probability p. Deterministic per seed.
Digraph ring_plus_random(int n, double p, std::uint64_t seed);

// All r from which every node is reachable along information flow.
std::set<int> spanning_tree_roots(const Digraph& g);

// Assumption check: roots(G_R) and roots(G_{C^T}) must intersect.
Assumption2Report check_assumption2(const Digraph& g_R, const Digraph& g_C);

// Degree-based uniform weights: R_ij = 1/(|N_in(i)|+1), C_ji = 1/(|N_out(i)|+1),
// diagonals absorb the remainder.
WeightPair build_weights(const Digraph& g);

// Validates row/column stochasticity, positive diagonals and the sparsity
// pattern against the digraph. Throws InvalidInput on violation.
void validate_weights(const WeightPair& w, const Digraph& g, double tol = 1e-12);

// Power iteration on R^T (for u) and on C (for v). Throws NumericalFailure
// when the residual does not reach tol within max_iter sweeps.
EigenPair perron_vectors(const WeightPair& w, double tol = 1e-10,
                         int max_iter = 100000);

// Same, from explicit (positive) starting vectors; the result is invariant
// to the start within the residual tolerance.
EigenPair perron_vectors_from(const WeightPair& w, const Eigen::VectorXd& u0,
                              const Eigen::VectorXd& v0, double tol = 1e-10,
                              int max_iter = 100000);

// Spectral radii of C_gamma - v1'/n and R - 1u'/n; both are < 1 whenever
// Assumption 2 holds.
struct ContractionRadii {
  double radius_C;
  double radius_R;
};
ContractionRadii contraction_check(const WeightPair& w, double gamma,
                                   const EigenPair& e);

// Edge-list text format: header "n <count>", then one "i j" ordered pair per
// line, 1-indexed, meaning j sends to i.
void write_edge_list(const Digraph& g, std::ostream& os);
Digraph read_edge_list(std::istream& is);
Digraph read_edge_list_file(const std::string& path);
void write_edge_list_file(const Digraph& g, const std::string& path);

}  // namespace vragt
