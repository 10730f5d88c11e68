#include <doctest.h>

#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "booknum/maxcut.hpp"
#include "booknum/pagecount.hpp"
#include "support.hpp"

using namespace booknum;
using booknum::testing::oracle_crossings;

namespace {

// One crossing: chords 13 and 24 on the lower page.
TwoPageDrawing k5_fixture() {
  TwoPageDrawing d;
  d.spine = {0, 1, 2, 3, 4};
  for (int i = 0; i + 1 < 5; ++i) d.edges.push_back({i, i + 1, Page::upper});
  d.edges.push_back({0, 4, Page::upper});
  d.edges.push_back({0, 2, Page::upper});
  d.edges.push_back({0, 3, Page::upper});
  d.edges.push_back({1, 3, Page::lower});
  d.edges.push_back({1, 4, Page::lower});
  d.edges.push_back({2, 4, Page::lower});
  return d;
}

}  // namespace

TEST_CASE("count_crossings fixtures") {
  CHECK(count_crossings(k5_fixture()) == 1);
  CHECK(count_crossings(complete_graph_drawing(4)) == 1);
  CHECK(count_crossings(complete_graph_drawing(5)) == 5);

  TwoPageDrawing split;
  split.spine = {0, 1, 2, 3};
  split.edges = {{0, 2, Page::upper}, {1, 3, Page::lower}};
  CHECK(count_crossings(split) == 0);
}

TEST_CASE("invalid drawings are rejected") {
  TwoPageDrawing d;
  d.spine = {0, 1, 1};
  CHECK_THROWS_AS((void)count_crossings(d), std::invalid_argument);
  d.spine = {0, 1, 2};
  d.edges = {{0, 5, Page::upper}};
  CHECK_THROWS_AS((void)count_crossings(d), std::invalid_argument);
  d.edges = {{1, 1, Page::upper}};
  CHECK_THROWS_AS(validate(d), std::invalid_argument);
}

TEST_CASE("count_crossings matches the oracle and its symmetries") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + trial % 6;
    const auto d = testing::random_complete_drawing(n, rng);
    const auto c = count_crossings(d);
    REQUIRE(c == oracle_crossings(d));
    REQUIRE(count_crossings(reversed(d)) == c);
    REQUIRE(count_crossings(pages_swapped(d)) == c);
    // Relabel vertices by a random permutation.
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    TwoPageDrawing r = d;
    for (auto& v : r.spine) v = perm[static_cast<std::size_t>(v)];
    for (auto& e : r.edges) e = {perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)], e.page};
    REQUIRE(count_crossings(r) == c);
  }
}

TEST_CASE("circular drawings cut to the spine keep their crossings") {
  CircularDrawing c;
  c.cycle = {3, 0, 4, 1, 2};
  std::mt19937_64 rng(3);
  const auto d = testing::random_complete_drawing(5, rng);
  c.edges = d.edges;
  const auto base = count_crossings(to_spine(c, 0));
  for (std::size_t s = 1; s < c.cycle.size(); ++s) CHECK(count_crossings(to_spine(c, s)) == base);
}

TEST_CASE("drawing_from_cut: crossings + cut = C(n,4)") {
  std::mt19937_64 rng(5);
  for (int n = 4; n <= 10; ++n) {
    const ChordGraph g(n);
    const auto sg = SimpleGraph::from(g);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint8_t> side(static_cast<std::size_t>(g.num_chords()));
      for (auto& s : side) s = coin(rng);
      const auto d = drawing_from_cut(g, side);
      REQUIRE(count_crossings(d) + cut_value(sg, side) == binomial(n, 4));
    }
  }
  // The two diagonals of a square on opposite pages.
  const ChordGraph g4(4);
  CHECK(count_crossings(drawing_from_cut(g4, std::vector<std::uint8_t>{0, 1})) == 0);
}

TEST_CASE("zarankiewicz_drawing attains Z(m,n)") {
  CHECK(count_crossings(zarankiewicz_drawing(5, 6)) == 24);
  CHECK(count_crossings(zarankiewicz_drawing(7, 10)) == 180);
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      const auto d = zarankiewicz_drawing(m, n);
      REQUIRE(oracle_crossings(d) == zeta_bipartite(m, n));
      REQUIRE(d.edges.size() == static_cast<std::size_t>(m * n));
    }
  }
}

TEST_CASE("star crossings sum to the total for bipartite drawings") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 5;
    const int n = 2 + trial % 7;
    const auto d = testing::random_bipartite_drawing(m, n, rng);
    std::int64_t sum = 0;
    for (int r1 = m; r1 < m + n; ++r1) {
      for (int r2 = r1 + 1; r2 < m + n; ++r2) sum += star_crossings(d, r1, r2);
    }
    REQUIRE(sum == count_crossings(d));
  }
}

TEST_CASE("extract_types: hand-built fixture") {
  // Blues 0..4, red 5 between the second and third blue; edge to the fourth blue on the lower page.
  TwoPageDrawing d;
  d.spine = {0, 1, 5, 2, 3, 4};
  for (int b = 0; b < 5; ++b) d.edges.push_back({b, 5, b == 3 ? Page::lower : Page::upper});
  const auto types = extract_types(d, 5, 1);
  REQUIRE(types.size() == 1);
  CHECK(types[0].p == 1);
  CHECK(types[0].upper == 0b10111U);

  // A red vertex on the far right with every edge on the lower page.
  TwoPageDrawing e;
  e.spine = {0, 1, 2, 3};
  for (int b = 0; b < 3; ++b) e.edges.push_back({b, 3, Page::lower});
  const auto t = extract_types(e, 3, 1);
  CHECK(t[0].p == 2);
  CHECK(t[0].upper == 0U);
}

TEST_CASE("extract_types rejects non-bipartite input") {
  TwoPageDrawing d;
  d.spine = {0, 1, 2};
  d.edges = {{0, 2, Page::upper}};
  CHECK_THROWS_AS((void)extract_types(d, 2, 1), std::invalid_argument);  // missing edge 1-2
  d.edges = {{0, 2, Page::upper}, {1, 2, Page::upper}, {0, 1, Page::upper}};
  CHECK_THROWS_AS((void)extract_types(d, 2, 1), std::invalid_argument);  // blue-blue edge
}

TEST_CASE("relocating the leftmost red vertex never adds crossings") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + trial % 5;
    const int n = 1 + trial % 6;
    const auto d = testing::random_bipartite_drawing(m, n, rng);
    CHECK(count_crossings(normalize_bipartite(d, m)) <= count_crossings(d));
    const auto types = extract_types(d, m, n);
    for (const auto& t : types) CHECK((t.p >= 0 && t.p < m));
  }
}

TEST_CASE("drawing JSON round trip") {
  const auto d = k5_fixture();
  const nlohmann::json j = d;
  CHECK(j.at("edges").at(0).at(2) == "upper");
  const auto back = j.get<TwoPageDrawing>();
  CHECK(back.spine == d.spine);
  CHECK(back.edges == d.edges);
  nlohmann::json bad = j;
  bad["edges"][0][2] = "middle";
  CHECK_THROWS_AS((void)bad.get<TwoPageDrawing>(), std::invalid_argument);
}
