#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "booknum/circle_graph.hpp"
#include "booknum/hermitian_linalg.hpp"
#include "booknum/maxcut.hpp"

namespace booknum {

struct GwFullResult {
  /// Safe upper bound sum(w) on GW(G) from a verified dual point.
  double value = 0.0;
  Eigen::VectorXd w;
  /// lambda_min(Diag(w) - L/4) after the shift.
  double margin = 0.0;
  bool converged = false;
};

/// Largest graph accepted by gw_full.
inline constexpr int kGwFullMaxVertices = 200;

/// GW(G) through its dual: minimize sum w_i subject to Diag(w) - L/4 PSD.
[[nodiscard]] GwFullResult gw_full(const SimpleGraph& g, double accuracy = 1e-8);
[[nodiscard]] GwFullResult gw_full(const ChordGraph& g, double accuracy = 1e-8);

/**
 * Dihedral reduction of the GW dual for G_n, n odd: one (d-1)x(d-1)
 * Hermitian block per frequency m = 0..d, with variables y_2..y_d.
 */
struct ReducedGwProblem {
  int n = 0;
  int d = 0;
  /// val[i - 2] = degree of a distance-i chord.
  std::vector<double> val;
  /// lambda[m](i-2, j-2) = circulant_block_eigs(i, j, n, m) / 4, Hermitian-completed.
  std::vector<HermitianMat> lambda;
};

/// Throws std::invalid_argument for even n or n < 5.
[[nodiscard]] ReducedGwProblem build_reduced(int n);

/// Diag(y - val/4) + lambda[m].
[[nodiscard]] HermitianMat reduced_block(const ReducedGwProblem& p, const std::vector<double>& y, int m);

struct GwCertificate {
  int n = 0;
  std::vector<double> y;
  /// Minimum over m of lambda_min(reduced_block(y, m)).
  double margin = 0.0;
  /// n * sum(y): upper bound on GW(G_n) when margin >= 0.
  double bound = 0.0;
  double tolerance = 0.0;
  /// False when the solver stopped before reaching the accuracy target.
  bool converged = false;
};

/// Always returns a feasible certificate (y shifted until the margin is nonnegative).
[[nodiscard]] GwCertificate gw_reduced_solve(const ReducedGwProblem& p, double accuracy = 1e-7);

/// y_i = val_i/4 + max_m lambda_max(-lambda[m]): diagonally dominant start.
[[nodiscard]] GwCertificate gw_trivial_certificate(const ReducedGwProblem& p);

struct GwVerification {
  bool valid = false;
  std::string reason;
  double margin = 0.0;
  double tolerance = 0.0;
  /// ceil(C(n,4) - n sum(y) - n(d-1)(max(0, -margin) + tolerance)), exact.
  std::int64_t implied_bound = 0;
};

/// Recomputes every block eigenvalue from y alone.
[[nodiscard]] GwVerification verify_gw_certificate(const GwCertificate& c);

void to_json(nlohmann::json& j, const GwCertificate& c);
/// Reads {"kind": "gw", "n", "y", "claimed_bound", "tolerance"}; throws std::invalid_argument.
void from_json(const nlohmann::json& j, GwCertificate& c);

}  // namespace booknum
