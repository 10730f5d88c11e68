#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "booknum/bipartite_types.hpp"
#include "support.hpp"

using namespace booknum;

namespace {

// Two stars on a spine with m blue vertices: sigma's red vertex sits right of
// blue p, tau's right of blue p' (and right of sigma's when p == p'). Counts
// alternating same-page edge pairs between the stars.
int geometric_pair_count(const RedType& sigma, const RedType& tau, int m) {
  TwoPageDrawing d;
  const int r1 = m;
  const int r2 = m + 1;
  for (int b = 0; b < m; ++b) {
    d.spine.push_back(b);
    if (b == sigma.p) d.spine.push_back(r1);
    if (b == tau.p) d.spine.push_back(r2);
  }
  for (int b = 0; b < m; ++b) {
    d.edges.push_back({b, r1, ((sigma.upper >> b) & 1U) ? Page::upper : Page::lower});
    d.edges.push_back({b, r2, ((tau.upper >> b) & 1U) ? Page::upper : Page::lower});
  }
  return static_cast<int>(testing::oracle_crossings(d));
}

}  // namespace

TEST_CASE("type table sizes and orbits") {
  const TypeTable t3(3);
  CHECK(t3.size() == 24);
  CHECK(t3.orbits().size() == 4);
  for (const auto& o : t3.orbits()) CHECK(o.size() == 6);
  const TypeTable t7(7);
  CHECK(t7.size() == 896);
  CHECK(t7.orbits().size() == 64);
  for (const auto& o : t7.orbits()) CHECK(o.size() == 14);
  CHECK_THROWS_AS(TypeTable(1), std::invalid_argument);
  CHECK_THROWS_AS(TypeTable(kMaxTypeM + 1), std::invalid_argument);
}

TEST_CASE("index is a bijection and orbits partition the types") {
  for (int m = 2; m <= 6; ++m) {
    const TypeTable tt(m);
    std::set<int> seen;
    for (std::size_t o = 0; o < tt.orbits().size(); ++o) {
      for (int v : tt.orbits()[o]) {
        CHECK(seen.insert(v).second);
        CHECK(tt.orbit_of(v) == static_cast<int>(o));
      }
    }
    CHECK(static_cast<int>(seen.size()) == tt.size());
    for (int i = 0; i < tt.size(); ++i) CHECK(tt.index(tt.type(i)) == i);
  }
}

TEST_CASE("g has order 2m and orbits are listed as g-powers of the minimal representative") {
  for (int m : {3, 5, 7}) {
    const TypeTable tt(m);
    for (int i = 0; i < tt.size(); ++i) {
      RedType t = tt.type(i);
      int order = 0;
      do {
        t = tt.generator(t);
        ++order;
      } while (tt.index(t) != i);
      REQUIRE(order == 2 * m);
    }
    for (const auto& o : tt.orbits()) {
      for (std::size_t k = 1; k < o.size(); ++k) REQUIRE(tt.index(tt.generator(tt.type(o[k - 1]))) == o[k]);
      const RedType rep = tt.type(o.front());
      for (int v : o) CHECK(rep.p <= tt.type(v).p);
    }
    for (std::size_t a = 1; a < tt.orbits().size(); ++a) {
      CHECK(tt.type(tt.orbits()[a - 1].front()).p <= tt.type(tt.orbits()[a].front()).p);
    }
  }
}

TEST_CASE("pair_count fixtures") {
  // Two stars with five blue neighbours, 0-based labels.
  CHECK(pair_count({1, 0b10111U}, {2, 0b11101U}, 5) == 2);
  const std::uint32_t full = (1U << 5) - 1;
  CHECK(pair_count({4, full}, {4, 0U}, 5) == 0);
}

TEST_CASE("pair_count matches the geometric oracle exhaustively for m <= 5") {
  for (int m = 2; m <= 5; ++m) {
    const TypeTable tt(m);
    for (int a = 0; a < tt.size(); ++a) {
      for (int b = 0; b < tt.size(); ++b) {
        const RedType s = tt.type(a);
        const RedType t = tt.type(b);
        const int fwd = pair_count(s, t, m);
        REQUIRE(fwd <= m * m);
        if (s.p <= t.p) REQUIRE(fwd == geometric_pair_count(s, t, m));
        // Both orders are realizable only for equal positions.
        if (s.p == t.p) REQUIRE(fwd + pair_count(t, s, m) <= m * m);
      }
    }
  }
}

TEST_CASE("Q is symmetric, group invariant and follows the position trichotomy") {
  for (int m : {3, 4, 5}) {
    const TypeTable tt(m);
    const QMatrix q(tt);
    for (int a = 0; a < tt.size(); ++a) {
      const RedType s = tt.type(a);
      REQUIRE(q(a, a) >= 0);
      REQUIRE(q(a, a) <= m * (m - 1) / 2);
      for (int b = 0; b < tt.size(); ++b) {
        const RedType t = tt.type(b);
        REQUIRE(q(a, b) == q(b, a));
        REQUIRE(q(tt.index(tt.flip(s)), tt.index(tt.flip(t))) == q(a, b));
        REQUIRE(q(tt.index(tt.shift(s)), tt.index(tt.shift(t))) == q(a, b));
        if (s.p < t.p) {
          REQUIRE(q(a, b) == pair_count(s, t, m));
        } else if (s.p > t.p) {
          REQUIRE(q(a, b) == pair_count(t, s, m));
        } else {
          REQUIRE(q(a, b) == std::min(pair_count(s, t, m), pair_count(t, s, m)));
        }
      }
    }
  }
}

TEST_CASE("diagonal bound holds up to m = 7") {
  const QMatrix q(TypeTable(7));
  for (int a = 0; a < q.size(); ++a) REQUIRE(q(a, a) <= 21);
}

TEST_CASE("orbit order gives block circulant structure") {
  for (int m : {3, 5}) {
    const TypeTable tt(m);
    const QMatrix q(tt);
    const int len = 2 * m;
    const auto& orbits = tt.orbits();
    for (int i = 0; i < q.num_orbits(); ++i) {
      for (int j = 0; j < q.num_orbits(); ++j) {
        const auto row = q.orbit_row(i, j);
        for (int a = 0; a < len; ++a) {
          for (int b = 0; b < len; ++b) {
            REQUIRE(q(orbits[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)],
                      orbits[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)]) ==
                    row[static_cast<std::size_t>(((b - a) % len + len) % len)]);
          }
        }
      }
    }
    CHECK(q.orbit_order().size() == static_cast<std::size_t>(q.size()));
  }
  CHECK_THROWS_AS((void)QMatrix(TypeTable(4)).orbit_row(0, 0), std::logic_error);
}

TEST_CASE("star crossings dominate Q on random drawings") {
  std::mt19937_64 rng(1234);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + trial % 5;
    const int n = 2 + trial % 7;
    const TypeTable tt(m);
    const QMatrix q(tt);
    const auto d = testing::random_bipartite_drawing(m, n, rng);
    const auto nd = normalize_bipartite(d, m);
    const auto types = extract_types(d, m, n);
    for (int r1 = 0; r1 < n; ++r1) {
      for (int r2 = r1 + 1; r2 < n; ++r2) {
        const auto cr = star_crossings(nd, m + r1, m + r2);
        REQUIRE(cr >= q(tt.index(types[static_cast<std::size_t>(r1)]), tt.index(types[static_cast<std::size_t>(r2)])));
        ++checked;
      }
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("qp_objective") {
  const TypeTable tt(3);
  const QMatrix q(tt);
  std::vector<double> x(static_cast<std::size_t>(q.size()), 0.0);
  x[5] = 1.0;
  CHECK(qp_objective(x, q) == q(5, 5));
  std::fill(x.begin(), x.end(), 1.0 / q.size());
  const double uniform = qp_objective(x, q);
  CHECK(uniform >= 0.5);
  x[0] += 0.1;
  CHECK_THROWS_AS((void)qp_objective(x, q), std::invalid_argument);
  x.pop_back();
  CHECK_THROWS_AS((void)qp_objective(x, q), std::invalid_argument);
}

TEST_CASE("type frequencies of the Zarankiewicz drawing approach 2 Z(m,n) / n^2") {
  const TypeTable tt(7);
  const QMatrix q(tt);
  const int n = 400;
  const auto x = type_distribution(zarankiewicz_drawing(7, n), tt, n);
  const double value = qp_objective(x, q);
  // Star crossings >= Q entries, so n^2 x^T Q x <= 2 Z(7,n) + n * max Q_ss.
  CHECK(value * n * n <= 2.0 * zeta_bipartite(7, n) + n * 21.0);
  CHECK(value == doctest::Approx(4.5).epsilon(0.02));
}

TEST_CASE("SDP bound for m = 3: reduced and dense paths agree") {
  const QMatrix q(TypeTable(3));
  const auto red = sdp_bound_reduced(q);
  const auto den = sdp_bound_dense(q);
  const auto vr = verify_zar_certificate(red, q);
  const auto vd = verify_zar_certificate(den, q);
  REQUIRE(vr.valid);
  REQUIRE(vd.valid);
  CHECK(to_double(vr.certified_t) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(std::abs(to_double(vr.certified_t) - to_double(vd.certified_t)) <= 1e-5);
  CHECK(to_double(vr.certified_t) <= red.t);
  const auto s = sdp_bound_solve(q);
  CHECK(s.layout == ZarLayout::reduced);
}

TEST_CASE("implied m = 3 bound never exceeds Z(3,n)") {
  const QMatrix q(TypeTable(3));
  const auto v = verify_zar_certificate(sdp_bound_solve(q), q);
  REQUIRE(v.valid);
  for (int n = 1; n <= 50; ++n) {
    const Rational bound = v.certified_t / 2 * n * n - Rational(3 * 2 * n, 4);
    CHECK(bound <= Rational(zeta_bipartite(3, n)));
  }
}

TEST_CASE("trivial and tampered certificates") {
  const QMatrix q(TypeTable(3));
  const auto trivial = zar_trivial_certificate(q, ZarLayout::reduced);
  const auto vt = verify_zar_certificate(trivial, q);
  CHECK(vt.valid);
  CHECK(vt.certified_t <= 0);
  CHECK(verify_zar_certificate(zar_trivial_certificate(q, ZarLayout::dense), q).valid);

  auto c = sdp_bound_reduced(q);
  REQUIRE(verify_zar_certificate(c, q).valid);
  auto bumped = c;
  bumped.blocks[1][3] += q.max_entry();
  const auto vb = verify_zar_certificate(bumped, q);
  CHECK_FALSE(vb.valid);
  CHECK(vb.reason.find("elementwise") != std::string::npos);

  auto asym = c;
  asym.blocks[0][1] += 1e-3;
  const auto va = verify_zar_certificate(asym, q);
  CHECK_FALSE(va.valid);
  CHECK(va.reason.find("palindrome") != std::string::npos);

  auto raised = c;
  raised.t += 0.25;
  CHECK_FALSE(verify_zar_certificate(raised, q).valid);

  auto wrong_m = c;
  wrong_m.m = 5;
  CHECK_FALSE(verify_zar_certificate(wrong_m, q).valid);

  auto short_block = c;
  short_block.blocks[2].pop_back();
  CHECK(verify_zar_certificate(short_block, q).reason.find("length") != std::string::npos);
}

TEST_CASE("safe_round repairs an infeasible point") {
  const QMatrix q(TypeTable(3));
  auto c = zar_trivial_certificate(q, ZarLayout::reduced);
  c.t = 1.0;
  c.blocks[0][0] = -3.0;  // diagonal block with a negative eigenvalue
  safe_round(c, q);
  const auto v = verify_zar_certificate(c, q);
  CHECK(v.valid);
  CHECK(c.t < 1.0);
}

TEST_CASE("zar certificate JSON round trip, including a flipped bit") {
  const QMatrix q(TypeTable(3));
  const auto c = sdp_bound_dense(q);
  const nlohmann::json j = c;
  CHECK(j.at("kind") == "zar");
  CHECK(j.at("layout") == "dense");
  const auto back = j.get<ZarCertificate>();
  const auto v = verify_zar_certificate(back, q);
  CHECK(v.valid);
  CHECK(v.certified_t == verify_zar_certificate(c, q).certified_t);

  auto flipped = nlohmann::json::parse(j.dump());
  flipped["t"] = flipped["t"].get<double>() * 2.0;  // exponent bit
  CHECK_FALSE(verify_zar_certificate(flipped.get<ZarCertificate>(), q).valid);

  nlohmann::json broken = j;
  broken["layout"] = "sparse";
  CHECK_THROWS_AS((void)broken.get<ZarCertificate>(), std::invalid_argument);
  broken = j;
  broken.erase("x_blocks");
  CHECK_THROWS_AS((void)broken.get<ZarCertificate>(), std::invalid_argument);
}

TEST_CASE("dense path for even m") {
  const QMatrix q(TypeTable(4));
  CHECK_THROWS_AS((void)sdp_bound_reduced(q), std::invalid_argument);
  const QMatrix big(TypeTable(6));
  CHECK_THROWS_AS((void)sdp_bound_dense(big), std::invalid_argument);
}

TEST_CASE("Q exports as CSV") {
  const QMatrix q(TypeTable(2));
  std::ostringstream os;
  q.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == q.size() - 1);
    ++rows;
  }
  CHECK(rows == q.size());
}

TEST_CASE("first-order solver matches the interior-point bound at m = 3") {
  const QMatrix q(TypeTable(3));
  const auto fo = sdp_bound_first_order(q);
  const auto ipm = sdp_bound_reduced(q);
  const auto vf = verify_zar_certificate(fo, q);
  const auto vi = verify_zar_certificate(ipm, q);
  REQUIRE(vf.valid);
  REQUIRE(vi.valid);
  CHECK(to_double(vf.certified_t) == doctest::Approx(to_double(vi.certified_t)).epsilon(1e-5));
  CHECK(vf.certified_t <= Rational(1, 2));
  CHECK_THROWS_AS((void)sdp_bound_first_order(QMatrix(TypeTable(4))), std::invalid_argument);
}

TEST_CASE("first-order solver with a tiny iteration budget still returns a valid certificate") {
  const QMatrix q(TypeTable(5));
  ZarOptions o;
  o.first_order_iterations = 30;
  const auto c = sdp_bound_first_order(q, o);
  const auto v = verify_zar_certificate(c, q);
  CHECK(v.valid);
  CHECK_FALSE(c.converged);
  CHECK(v.certified_t <= Rational(2));
}
