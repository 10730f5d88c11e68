#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace booknum {

/// Chord {a, b} of the n-cycle with cyclic distance >= 2, stored with a < b.
struct Chord {
  int a = 0;
  int b = 0;
  int dist = 0;

  friend bool operator==(const Chord&, const Chord&) = default;
};

/// Canonical chord between two cycle vertices. Throws std::invalid_argument
/// if the vertices coincide, are out of range or are cycle neighbours.
[[nodiscard]] Chord make_chord(int u, int v, int n);

/// True iff the chords have four distinct endpoints that interleave around the cycle.
[[nodiscard]] bool chords_cross(const Chord& c1, const Chord& c2, int n);

[[nodiscard]] std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Z(n) = 1/4 floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2).
[[nodiscard]] std::int64_t zeta_complete(std::int64_t n);
/// Z(m, n) = floor(n/2) floor((n-1)/2) floor(m/2) floor((m-1)/2).
[[nodiscard]] std::int64_t zeta_bipartite(std::int64_t m, std::int64_t n);

/// Degree in G_n of a chord at distance i: (i-1)(n-i-1).
[[nodiscard]] int chord_valency(int i, int n);
/// The odd-n closed form i(i-1) + 2(i-1)(d-i), d = floor(n/2). Equals
/// chord_valency for odd n only.
[[nodiscard]] int chord_valency_odd_form(int i, int n);

/**
 * Intersection graph G_n of the chords of an n-cycle.
 *
 * Chords are ordered by (dist, a, b). Adjacency is kept both as dense bit
 * rows (constant-time queries) and as sorted neighbour lists.
 */
class ChordGraph {
 public:
  /// Throws std::invalid_argument for n < 4.
  explicit ChordGraph(int n);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int d() const { return n_ / 2; }
  [[nodiscard]] int num_chords() const { return static_cast<int>(chords_.size()); }
  [[nodiscard]] std::int64_t num_edges() const { return num_edges_; }
  [[nodiscard]] std::span<const Chord> chords() const { return chords_; }
  [[nodiscard]] const Chord& chord(int u) const { return chords_[static_cast<std::size_t>(u)]; }

  [[nodiscard]] bool adjacent(int u, int v) const {
    const auto& row = bits_[static_cast<std::size_t>(u)];
    return (row[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U;
  }
  [[nodiscard]] std::span<const int> neighbors(int u) const { return adj_[static_cast<std::size_t>(u)]; }
  [[nodiscard]] int degree(int u) const { return static_cast<int>(adj_[static_cast<std::size_t>(u)].size()); }

  /// Orbit under the dihedral symmetry = cyclic distance of the chord.
  [[nodiscard]] int orbit_of(int u) const { return chord(u).dist; }
  [[nodiscard]] int num_orbits() const { return d() - 1; }

  /// Index of the chord joining u and v; -1 if there is none.
  [[nodiscard]] int index_of(int u, int v) const;

  /// All adjacent pairs (u, v) with u < v.
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;

  /// Edge list: header "p maxcut <V> <E>", then one "u v" line per edge, 0-based.
  void write_edge_list(std::ostream& os) const;

 private:
  int n_;
  std::vector<Chord> chords_;
  std::vector<std::vector<std::uint64_t>> bits_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> index_;  // n*n lookup
  std::int64_t num_edges_ = 0;
};

[[nodiscard]] inline ChordGraph build_chord_graph(int n) { return ChordGraph(n); }

}  // namespace booknum
