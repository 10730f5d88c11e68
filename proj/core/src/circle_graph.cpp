#include "booknum/circle_graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace booknum {

Chord make_chord(int u, int v, int n) {
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
    throw std::invalid_argument("make_chord: bad endpoints " + std::to_string(u) + "," +
                                std::to_string(v));
  }
  const int a = std::min(u, v);
  const int b = std::max(u, v);
  const int dist = std::min(b - a, n - (b - a));
  if (dist < 2) throw std::invalid_argument("make_chord: endpoints are cycle neighbours");
  return {a, b, dist};
}

bool chords_cross(const Chord& c1, const Chord& c2, int /*n*/) {
  if (c1.a == c2.a || c1.a == c2.b || c1.b == c2.a || c1.b == c2.b) return false;
  const bool in_a = c1.a < c2.a && c2.a < c1.b;
  const bool in_b = c1.a < c2.b && c2.b < c1.b;
  return in_a != in_b;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t zeta_complete(std::int64_t n) {
  if (n < 4) return 0;
  return (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4;
}

std::int64_t zeta_bipartite(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw std::invalid_argument("zeta_bipartite: negative argument");
  if (m < 2 || n < 2) return 0;
  return (n / 2) * ((n - 1) / 2) * (m / 2) * ((m - 1) / 2);
}

int chord_valency(int i, int n) { return (i - 1) * (n - i - 1); }

int chord_valency_odd_form(int i, int n) {
  const int d = n / 2;
  return i * (i - 1) + 2 * (i - 1) * (d - i);
}

ChordGraph::ChordGraph(int n) : n_(n) {
  if (n < 4) throw std::invalid_argument("ChordGraph: need n >= 4, got " + std::to_string(n));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;
      chords_.push_back(make_chord(a, b, n));
    }
  }
  std::sort(chords_.begin(), chords_.end(), [](const Chord& x, const Chord& y) {
    return std::tie(x.dist, x.a, x.b) < std::tie(y.dist, y.a, y.b);
  });

  const auto v = chords_.size();
  index_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (std::size_t u = 0; u < v; ++u) {
    const auto& c = chords_[u];
    index_[static_cast<std::size_t>(c.a * n + c.b)] = static_cast<int>(u);
    index_[static_cast<std::size_t>(c.b * n + c.a)] = static_cast<int>(u);
  }

  const std::size_t words = (v + 63) / 64;
  bits_.assign(v, std::vector<std::uint64_t>(words, 0));
  adj_.assign(v, {});
  for (std::size_t u = 0; u < v; ++u) {
    for (std::size_t w = u + 1; w < v; ++w) {
      if (!chords_cross(chords_[u], chords_[w], n)) continue;
      bits_[u][w >> 6] |= std::uint64_t{1} << (w & 63);
      bits_[w][u >> 6] |= std::uint64_t{1} << (u & 63);
      adj_[u].push_back(static_cast<int>(w));
      adj_[w].push_back(static_cast<int>(u));
      ++num_edges_;
    }
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

int ChordGraph::index_of(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  return index_[static_cast<std::size_t>(u * n_ + v)];
}

std::vector<std::pair<int, int>> ChordGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(num_edges_));
  for (int u = 0; u < num_chords(); ++u) {
    for (int w : neighbors(u)) {
      if (u < w) out.emplace_back(u, w);
    }
  }
  return out;
}

void ChordGraph::write_edge_list(std::ostream& os) const {
  os << "p maxcut " << num_chords() << ' ' << num_edges_ << '\n';
  for (const auto& [u, w] : edges()) os << u << ' ' << w << '\n';
}

}  // namespace booknum
