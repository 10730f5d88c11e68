#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "booknum/pagecount.hpp"

namespace booknum::testing {

// Crossings by the definition: same page, four distinct endpoints, exactly
// one endpoint of the second edge strictly between those of the first.
inline std::int64_t oracle_crossings(const TwoPageDrawing& d) {
  std::vector<int> pos(d.spine.size() + 64, -1);
  for (std::size_t i = 0; i < d.spine.size(); ++i) {
    const auto v = static_cast<std::size_t>(d.spine[i]);
    if (v >= pos.size()) pos.resize(v + 1, -1);
    pos[v] = static_cast<int>(i);
  }
  std::int64_t count = 0;
  for (std::size_t a = 0; a < d.edges.size(); ++a) {
    for (std::size_t b = a + 1; b < d.edges.size(); ++b) {
      const auto& e = d.edges[a];
      const auto& f = d.edges[b];
      if (e.page != f.page) continue;
      if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) continue;
      const int lo = std::min(pos[static_cast<std::size_t>(e.u)], pos[static_cast<std::size_t>(e.v)]);
      const int hi = std::max(pos[static_cast<std::size_t>(e.u)], pos[static_cast<std::size_t>(e.v)]);
      const bool in1 = lo < pos[static_cast<std::size_t>(f.u)] && pos[static_cast<std::size_t>(f.u)] < hi;
      const bool in2 = lo < pos[static_cast<std::size_t>(f.v)] && pos[static_cast<std::size_t>(f.v)] < hi;
      if (in1 != in2) ++count;
    }
  }
  return count;
}

// Random spine order and page assignment for K_{m,n}; blues 0..m-1, reds m..m+n-1.
inline TwoPageDrawing random_bipartite_drawing(int m, int n, std::mt19937_64& rng) {
  TwoPageDrawing d;
  d.spine.resize(static_cast<std::size_t>(m + n));
  std::iota(d.spine.begin(), d.spine.end(), 0);
  std::shuffle(d.spine.begin(), d.spine.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (int b = 0; b < m; ++b) {
    for (int r = m; r < m + n; ++r) d.edges.push_back({b, r, coin(rng) ? Page::upper : Page::lower});
  }
  return d;
}

inline TwoPageDrawing random_complete_drawing(int n, std::mt19937_64& rng) {
  TwoPageDrawing d;
  d.spine.resize(static_cast<std::size_t>(n));
  std::iota(d.spine.begin(), d.spine.end(), 0);
  std::shuffle(d.spine.begin(), d.spine.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) d.edges.push_back({u, v, coin(rng) ? Page::upper : Page::lower});
  }
  return d;
}

}  // namespace booknum::testing
