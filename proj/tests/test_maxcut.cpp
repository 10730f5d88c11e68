#include <doctest.h>

#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "booknum/maxcut.hpp"

using namespace booknum;

namespace {

std::int64_t brute_force_maxcut(const SimpleGraph& g) {
  std::int64_t best = 0;
  const std::uint32_t limit = g.n > 0 ? (std::uint32_t{1} << (g.n - 1)) : 1;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::int64_t v = 0;
    for (const auto& [a, b] : g.edges) v += ((mask >> a) & 1U) != ((mask >> b) & 1U);
    best = std::max(best, v);
  }
  return best;
}

SimpleGraph random_graph(int n, double p, std::mt19937_64& rng) {
  SimpleGraph g;
  g.n = n;
  std::bernoulli_distribution coin(p);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (coin(rng)) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("maxcut of G_n agrees with exhaustive enumeration") {
  for (int n : {5, 6, 7}) {
    const ChordGraph g(n);
    const auto sg = SimpleGraph::from(g);
    MaxcutOptions o;
    o.enumerate_below = 0;  // force the relaxation path
    const auto r = maxcut_exact(sg, o);
    CHECK(r.proof_status == ProofStatus::exact);
    CHECK(r.optimum == brute_force_maxcut(sg));
    CHECK(r.witness.value == r.optimum);
    CHECK(cut_value(sg, r.witness.side) == r.optimum);
  }
}

TEST_CASE("maxcut on random graphs agrees with exhaustive enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + trial % 13;
    const auto g = random_graph(n, 0.2 + 0.03 * (trial % 20), rng);
    MaxcutOptions o;
    o.enumerate_below = trial % 2 == 0 ? 0 : 12;
    const auto r = maxcut_exact(g, o);
    REQUIRE(r.proof_status == ProofStatus::exact);
    REQUIRE(r.optimum == brute_force_maxcut(g));
    REQUIRE(cut_value(g, r.witness.side) == r.optimum);
  }
}

TEST_CASE("edge cases") {
  SimpleGraph empty;
  empty.n = 3;
  const auto r = maxcut_exact(empty);
  CHECK(r.optimum == 0);
  CHECK(r.proof_status == ProofStatus::exact);
  SimpleGraph bad;
  bad.n = 2;
  bad.edges = {{0, 2}};
  CHECK_THROWS_AS((void)maxcut_exact(bad), std::invalid_argument);
  bad.edges = {{1, 1}};
  CHECK_THROWS_AS((void)maxcut_exact(bad), std::invalid_argument);
}

TEST_CASE("nu_2(K_n) for small n equals Z(n)") {
  CHECK(nu2_complete_exact(3).value == 0);
  CHECK(nu2_complete_exact(4).value == 0);
  const std::int64_t expect_cut[] = {4, 12, 26, 52, 90};
  for (int n = 5; n <= 9; ++n) {
    const auto r = nu2_complete_exact(n);
    CHECK(r.proof_status == ProofStatus::exact);
    CHECK(r.maxcut.optimum == expect_cut[n - 5]);
    CHECK(r.value == zeta_complete(n));
    CHECK(r.lower_bound == r.value);
    CHECK(count_crossings(r.witness) == r.value);
  }
}

TEST_CASE("budgets stop the search with a valid bound") {
  MaxcutOptions o;
  o.max_nodes = 1;
  o.root_cut_rounds = 0;
  const auto r = maxcut_exact(ChordGraph(11), o);
  CHECK(r.upper_bound >= 230);
  CHECK(r.optimum <= 230);
  CHECK(cut_value(SimpleGraph::from(ChordGraph(11)), r.witness.side) == r.optimum);
  if (r.proof_status == ProofStatus::exact) CHECK(r.optimum == 230);
  MaxcutOptions neg;
  neg.max_seconds = -1;
  CHECK_THROWS_AS((void)maxcut_exact(ChordGraph(5), neg), std::invalid_argument);
}

TEST_CASE("results are deterministic for a fixed seed") {
  const auto a = maxcut_exact(ChordGraph(8));
  const auto b = maxcut_exact(ChordGraph(8));
  CHECK(a.optimum == b.optimum);
  CHECK(a.witness.side == b.witness.side);
  CHECK(a.nodes_explored == b.nodes_explored);
}

TEST_CASE("heartbeat is called on long runs") {
  MaxcutOptions o;
  int calls = 0;
  o.heartbeat = [&](const MaxcutProgress&) { ++calls; };
  o.heartbeat_seconds = 0.0;
  const auto r = maxcut_exact(ChordGraph(9), o);
  CHECK(r.optimum == 90);
  CHECK(calls >= 1);
}

TEST_CASE("odd to even step") {
  const std::int64_t odd[] = {1, 9, 36, 100};
  for (int k = 0; k < 4; ++k) {
    const int n = 5 + 2 * k;
    CHECK(odd_to_even_step(odd[k], n) == zeta_complete(n + 1));
  }
  CHECK_THROWS_AS((void)odd_to_even_step(1, 6), std::invalid_argument);
  CHECK_THROWS_AS((void)odd_to_even_step(-1, 7), std::invalid_argument);
}

TEST_CASE("maxcut result JSON carries the witness") {
  const auto r = maxcut_exact(ChordGraph(6));
  const nlohmann::json j = r;
  CHECK(j.at("optimum") == r.optimum);
  CHECK(j.at("witness").get<std::string>().size() == r.witness.side.size());
  CHECK(j.at("proof_status") == "exact");
}
