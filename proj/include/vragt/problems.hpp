#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vragt {

// Per-agent objective family. Gradients are exact local gradients; all
// evaluation is pure and concurrently callable.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual int agents() const = 0;
  virtual int dim() const = 0;
  virtual double value(int agent, const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd grad(int agent, const Eigen::VectorXd& x) const = 0;
  virtual std::optional<Eigen::VectorXd> optimum() const { return std::nullopt; }
};

// f_j(x) = ||M_j x - v_j||^2 + r ||x||^2 with v_j = M_j x_tilde + nu_j.
struct RidgeInstance {
  std::vector<Eigen::MatrixXd> M;  // each d1 x d
  std::vector<Eigen::VectorXd> v;  // each length d1
  double r = 0.0;
  Eigen::VectorXd x_tilde;

  int agents() const { return static_cast<int>(M.size()); }
  int d1() const { return static_cast<int>(M.front().rows()); }
  int dim() const { return static_cast<int>(M.front().cols()); }
};

struct Box {
  double lo = 1.0;
  double hi = 10.0;
};

// M entries uniform on [0,1], nu standard normal, x_tilde coordinates evenly
// spaced across the box (midpoint for d = 1). Deterministic per seed.
RidgeInstance generate_ridge(int n, int d1, int d, double r, Box box,
                             std::uint64_t seed);

double ridge_value(const RidgeInstance& inst, int agent,
                   const Eigen::VectorXd& x);
Eigen::VectorXd ridge_grad(const RidgeInstance& inst, int agent,
                           const Eigen::VectorXd& x);

// Closed-form argmin of sum_j f_j: (sum M'M + n r I)^{-1} sum M'v. Enforces
// ||sum grad f_j(x*)|| <= 1e-8 before returning.
Eigen::VectorXd solve_optimum(const RidgeInstance& inst);

struct SmoothnessConstants {
  double L;   // max_i 2(lambda_max(M_i'M_i) + r)
  double mu;  // 2(lambda_min(sum M'M)/n + r), for the averaged objective
};
SmoothnessConstants smoothness_constants(const RidgeInstance& inst);

class RidgeObjective : public Objective {
 public:
  explicit RidgeObjective(RidgeInstance inst);

  int agents() const override { return inst_.agents(); }
  int dim() const override { return inst_.dim(); }
  double value(int agent, const Eigen::VectorXd& x) const override;
  Eigen::VectorXd grad(int agent, const Eigen::VectorXd& x) const override;
  std::optional<Eigen::VectorXd> optimum() const override { return x_star_; }

  const RidgeInstance& instance() const { return inst_; }

 private:
  RidgeInstance inst_;
  Eigen::VectorXd x_star_;
};

// Toy problem for tests: f_i(x) = ||x - target_i||^2.
class QuadraticObjective : public Objective {
 public:
  QuadraticObjective(std::vector<Eigen::VectorXd> targets);

  int agents() const override { return static_cast<int>(targets_.size()); }
  int dim() const override { return static_cast<int>(targets_.front().size()); }
  double value(int agent, const Eigen::VectorXd& x) const override;
  Eigen::VectorXd grad(int agent, const Eigen::VectorXd& x) const override;
  std::optional<Eigen::VectorXd> optimum() const override;

 private:
  std::vector<Eigen::VectorXd> targets_;
};

// Flat text format: header "ridge n d1 d r", then per agent the d1 rows of
// M_i followed by the d1 entries of v_i.
void write_ridge(const RidgeInstance& inst, std::ostream& os);
RidgeInstance read_ridge(std::istream& is);
RidgeInstance read_ridge_file(const std::string& path);
void write_ridge_file(const RidgeInstance& inst, const std::string& path);

}  // namespace vragt
