#include <doctest.h>

#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "booknum/circle_graph.hpp"

using namespace booknum;

namespace {

// Crossing test by brute force: two chords of a convex polygon cross iff
// exactly one endpoint of the second lies strictly inside the arc (a, b).
bool oracle_cross(int a, int b, int c, int d) {
  if (a == c || a == d || b == c || b == d) return false;
  auto inside = [&](int x) { return a < x && x < b; };
  return inside(c) != inside(d);
}

std::int64_t oracle_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("binomial and Zarankiewicz numbers") {
  CHECK(binomial(5, 4) == 5);
  CHECK(binomial(899, 4) == oracle_binomial(899, 4));
  CHECK(binomial(3, 4) == 0);
  CHECK(zeta_complete(5) == 1);
  CHECK(zeta_complete(11) == 100);
  CHECK(zeta_complete(24) == 3630);
  CHECK(zeta_bipartite(3, 10) == 20);
  CHECK(zeta_bipartite(8, 100) == 4 * 3 * 50 * 49);
  for (int n = 4; n <= 60; ++n) {
    std::int64_t z = (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2);
    CHECK(z % 4 == 0);
    CHECK(zeta_complete(n) == z / 4);
  }
}

TEST_CASE("make_chord validates its input") {
  CHECK(make_chord(4, 1, 7) == Chord{1, 4, 3});
  CHECK(make_chord(0, 5, 7).dist == 2);
  CHECK_THROWS_AS((void)make_chord(0, 1, 7), std::invalid_argument);
  CHECK_THROWS_AS((void)make_chord(0, 6, 7), std::invalid_argument);
  CHECK_THROWS_AS((void)make_chord(2, 2, 7), std::invalid_argument);
  CHECK_THROWS_AS((void)make_chord(0, 7, 7), std::invalid_argument);
}

TEST_CASE("G_n sizes: |V| = C(n,2) - n, |E| = C(n,4), d - 1 orbits") {
  for (int n = 4; n <= 30; ++n) {
    const ChordGraph g(n);
    CHECK(g.num_chords() == oracle_binomial(n, 2) - n);
    CHECK(g.num_edges() == oracle_binomial(n, 4));
    CHECK(g.num_orbits() == n / 2 - 1);
    std::set<int> dists;
    for (const auto& c : g.chords()) dists.insert(c.dist);
    CHECK(static_cast<int>(dists.size()) == g.num_orbits());
  }
  CHECK_THROWS_AS(ChordGraph(3), std::invalid_argument);
}

TEST_CASE("adjacency agrees with the geometric oracle") {
  for (int n : {4, 5, 6, 9, 12}) {
    const ChordGraph g(n);
    std::int64_t edges = 0;
    for (int u = 0; u < g.num_chords(); ++u) {
      for (int v = 0; v < g.num_chords(); ++v) {
        const auto& cu = g.chord(u);
        const auto& cv = g.chord(v);
        const bool expect = oracle_cross(cu.a, cu.b, cv.a, cv.b);
        REQUIRE(g.adjacent(u, v) == expect);
        REQUIRE(chords_cross(cu, cv, n) == expect);
        if (u < v && expect) ++edges;
      }
    }
    CHECK(edges == g.num_edges());
    CHECK(static_cast<std::int64_t>(g.edges().size()) == edges);
  }
}

TEST_CASE("valency formula for every chord") {
  for (int n = 4; n <= 30; ++n) {
    const ChordGraph g(n);
    for (int u = 0; u < g.num_chords(); ++u) {
      const int i = g.chord(u).dist;
      REQUIRE(g.degree(u) == chord_valency(i, n));
      if (n % 2 == 1) REQUIRE(chord_valency_odd_form(i, n) == chord_valency(i, n));
    }
  }
  // The odd-n closed form does not extend to even n.
  CHECK(chord_valency(3, 6) == 4);
  CHECK(chord_valency_odd_form(3, 6) == 6);
}

TEST_CASE("index_of and orbits") {
  const ChordGraph g(9);
  for (int u = 0; u < g.num_chords(); ++u) {
    const auto& c = g.chord(u);
    CHECK(g.index_of(c.a, c.b) == u);
    CHECK(g.index_of(c.b, c.a) == u);
    CHECK(g.orbit_of(u) == c.dist);
  }
  CHECK(g.index_of(0, 1) == -1);
}

TEST_CASE("edge list export") {
  const ChordGraph g(5);
  std::ostringstream os;
  g.write_edge_list(os);
  std::istringstream is(os.str());
  std::string p, kind;
  int v = 0, e = 0;
  is >> p >> kind >> v >> e;
  CHECK(p == "p");
  CHECK(kind == "maxcut");
  CHECK(v == 5);
  CHECK(e == 5);
  int a = 0, b = 0, lines = 0;
  while (is >> a >> b) {
    CHECK(g.adjacent(a, b));
    ++lines;
  }
  CHECK(lines == 5);
}
