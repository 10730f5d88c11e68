#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "booknum/circle_graph.hpp"
#include "booknum/pagecount.hpp"

namespace booknum {

/// Undirected simple graph on vertices 0..n-1.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  [[nodiscard]] static SimpleGraph from(const ChordGraph& g);
};

struct CutPartition {
  std::vector<std::uint8_t> side;
  std::int64_t value = 0;
};

/// Number of edges whose endpoints lie on different sides.
[[nodiscard]] std::int64_t cut_value(const SimpleGraph& g, std::span<const std::uint8_t> side);

enum class ProofStatus : std::uint8_t { exact, bound_only };

[[nodiscard]] std::string_view to_string(ProofStatus s);

struct MaxcutProgress {
  std::int64_t nodes = 0;
  std::int64_t incumbent = 0;
  std::int64_t open_nodes = 0;
  double seconds = 0.0;
};

struct MaxcutOptions {
  /// Negative means unlimited.
  std::int64_t max_nodes = -1;
  double max_seconds = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
  /// Subproblems with at most this many undecided vertices are enumerated.
  int enumerate_below = 12;
  int root_cut_rounds = 40;
  int node_cut_rounds = 8;
  /// Called at most once per `heartbeat_seconds`.
  std::function<void(const MaxcutProgress&)> heartbeat;
  double heartbeat_seconds = 10.0;
};

struct MaxcutResult {
  std::int64_t optimum = 0;
  /// Proven upper bound on the maximum cut; equals `optimum` when exact.
  std::int64_t upper_bound = 0;
  CutPartition witness;
  std::int64_t nodes_explored = 0;
  ProofStatus proof_status = ProofStatus::bound_only;
  double seconds = 0.0;
  /// Safe SDP bound at the root (before rounding down); 0 if the root was enumerated.
  double root_bound = 0.0;
};

/**
 * Exact maximum cut by branch and bound.
 *
 * Each node is bounded by a semidefinite relaxation strengthened with
 * triangle inequalities; the bound is taken from a dual point whose
 * feasibility is restored by an eigenvalue shift, so it is valid whatever the
 * solver accuracy. Small subproblems are enumerated. The search is sequential
 * and deterministic for a given seed.
 */
[[nodiscard]] MaxcutResult maxcut_exact(const SimpleGraph& g, const MaxcutOptions& options = {});
[[nodiscard]] MaxcutResult maxcut_exact(const ChordGraph& g, const MaxcutOptions& options = {});

struct Nu2Result {
  int n = 0;
  /// Crossings of the witness drawing: an upper bound, exact when proof_status is exact.
  std::int64_t value = 0;
  /// C(n,4) - maxcut upper bound.
  std::int64_t lower_bound = 0;
  ProofStatus proof_status = ProofStatus::exact;
  MaxcutResult maxcut;
  TwoPageDrawing witness;
};

/// nu_2(K_n) = C(n,4) - maxcut(G_n), with a drawing attaining it. n >= 3.
[[nodiscard]] Nu2Result nu2_complete_exact(int n, const MaxcutOptions& options = {});

/// ceil((n+1) * nu / (n-3)): lower bound for nu_2(K_{n+1}) from one for nu_2(K_n), n odd >= 5.
[[nodiscard]] std::int64_t odd_to_even_step(std::int64_t nu_odd, int n_odd);

void to_json(nlohmann::json& j, const MaxcutResult& r);

}  // namespace booknum
