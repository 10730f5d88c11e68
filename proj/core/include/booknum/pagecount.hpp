#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "booknum/circle_graph.hpp"

namespace booknum {

enum class Page : std::uint8_t { upper, lower };

[[nodiscard]] std::string_view to_string(Page p);
/// Parses "upper" / "lower"; throws std::invalid_argument otherwise.
[[nodiscard]] Page parse_page(std::string_view s);

struct DrawnEdge {
  int u = 0;
  int v = 0;
  Page page = Page::upper;

  friend bool operator==(const DrawnEdge&, const DrawnEdge&) = default;
};

/// Spine model: vertices on a line in `spine` order, each edge in one half-plane.
struct TwoPageDrawing {
  std::vector<int> spine;
  std::vector<DrawnEdge> edges;
};

/// Circular model: vertices around a circle, upper = inside, lower = outside.
struct CircularDrawing {
  std::vector<int> cycle;
  std::vector<DrawnEdge> edges;
};

/// Throws std::invalid_argument if the spine repeats a vertex, an edge has an
/// endpoint missing from the spine, or an edge is a loop.
void validate(const TwoPageDrawing& d);

/// Same-page edge pairs whose endpoints strictly alternate along the spine.
[[nodiscard]] std::int64_t count_crossings(const TwoPageDrawing& d);

/// Crossings between an edge at r1 and an edge at r2 (edges at both are skipped).
[[nodiscard]] std::int64_t star_crossings(const TwoPageDrawing& d, int r1, int r2);

[[nodiscard]] TwoPageDrawing reversed(const TwoPageDrawing& d);
[[nodiscard]] TwoPageDrawing pages_swapped(const TwoPageDrawing& d);

/// Cuts the circle just before position `start` of `c.cycle`.
[[nodiscard]] TwoPageDrawing to_spine(const CircularDrawing& c, std::size_t start = 0);

/**
 * Drawing of K_n on spine 0..n-1 from a cut of G_n: chords with side 0 go
 * on the upper page, side 1 on the lower page, cycle edges on the upper page.
 * Crossings = C(n,4) - cut value.
 */
[[nodiscard]] TwoPageDrawing drawing_from_cut(const ChordGraph& g, std::span<const std::uint8_t> side);

/// K_n drawn with every edge on the upper page (for small tests).
[[nodiscard]] TwoPageDrawing complete_graph_drawing(int n, Page page = Page::upper);

/**
 * Drawing of K_{m,n} with Z(m,n) crossings. Blue vertices are 0..m-1, red
 * vertices m..m+n-1. Throws std::logic_error if the counted crossings differ
 * from Z(m,n).
 */
[[nodiscard]] TwoPageDrawing zarankiewicz_drawing(int m, int n);

/// Type of a red vertex: p = (blue vertices to its left) - 1, and the bit
/// set `upper` of blue ranks whose edge to it is on the upper page.
struct RedType {
  int p = 0;
  std::uint32_t upper = 0;

  friend bool operator==(const RedType&, const RedType&) = default;
};

/// Moves red vertices left of the first blue vertex to the right end,
/// keeping their order. Blue vertices are those with label < m.
[[nodiscard]] TwoPageDrawing normalize_bipartite(const TwoPageDrawing& d, int m);

/**
 * Types of the red vertices m..m+n-1 (in label order) of a drawing of K_{m,n}
 * whose blue vertices are 0..m-1. Normalizes first. Blue ranks follow spine order.
 * Throws std::invalid_argument if the drawing is not a drawing of K_{m,n}.
 */
[[nodiscard]] std::vector<RedType> extract_types(const TwoPageDrawing& d, int m, int n);

void to_json(nlohmann::json& j, const TwoPageDrawing& d);
void from_json(const nlohmann::json& j, TwoPageDrawing& d);

}  // namespace booknum
