#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

/// Small dense primal-dual interior-point solver for block-structured
/// semidefinite programs.
///
/// Primal:  minimize <C, X>  s.t.  <A_k, X> = b_k,  X in K
/// Dual:    maximize b^T y   s.t.  S = C - sum_k y_k A_k in K
///
/// K is a product of real symmetric PSD cones and nonnegative orthants.
/// Hermitian blocks are handled by callers through their real embedding.
/// Search direction is HKM with a Mehrotra predictor-corrector.
namespace booknum::sdp {

enum class BlockKind : std::uint8_t { psd, lp };

struct Block {
  BlockKind kind = BlockKind::psd;
  int dim = 0;
};

/// One coefficient of a constraint matrix. In a psd block it sets both
/// (row, col) and (col, row); in an lp block only `row` is used.
struct Entry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct Problem {
  std::vector<Block> blocks;
  /// psd: dim x dim symmetric; lp: dim x 1.
  std::vector<Eigen::MatrixXd> c;
  std::vector<std::vector<Entry>> constraints;
  std::vector<double> b;

  int add_block(BlockKind kind, int dim);
  int add_constraint(std::vector<Entry> entries, double rhs);
  [[nodiscard]] int num_constraints() const { return static_cast<int>(constraints.size()); }
  /// Throws std::invalid_argument on out-of-range entries or shape mismatch.
  void validate() const;
};

enum class Status : std::uint8_t { optimal, max_iterations, stalled, numerical_error };

[[nodiscard]] std::string_view to_string(Status s);

struct Progress {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
};

struct Options {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iterations = 100;
  /// Called once per iteration; returning true stops the solve early.
  std::function<bool(const Progress&)> on_iteration;
};

struct Solution {
  Status status = Status::numerical_error;
  int iterations = 0;
  std::vector<Eigen::MatrixXd> x;
  std::vector<Eigen::MatrixXd> s;
  Eigen::VectorXd y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
};

[[nodiscard]] Solution solve(const Problem& problem, const Options& options = {});

/// C - sum_k y_k A_k, evaluated directly from y.
[[nodiscard]] std::vector<Eigen::MatrixXd> dual_slack(const Problem& problem,
                                                      const Eigen::VectorXd& y);

}  // namespace booknum::sdp
