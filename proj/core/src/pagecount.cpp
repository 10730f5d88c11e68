#include "booknum/pagecount.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace booknum {

std::string_view to_string(Page p) { return p == Page::upper ? "upper" : "lower"; }

Page parse_page(std::string_view s) {
  if (s == "upper") return Page::upper;
  if (s == "lower") return Page::lower;
  throw std::invalid_argument("unknown page '" + std::string(s) + "'");
}

namespace {

std::unordered_map<int, int> positions(const TwoPageDrawing& d) {
  std::unordered_map<int, int> pos;
  pos.reserve(d.spine.size());
  for (std::size_t i = 0; i < d.spine.size(); ++i) {
    if (!pos.emplace(d.spine[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("drawing: vertex " + std::to_string(d.spine[i]) +
                                  " repeated on the spine");
    }
  }
  return pos;
}

struct Span {
  int lo;
  int hi;
  Page page;
};

std::vector<Span> spans(const TwoPageDrawing& d) {
  const auto pos = positions(d);
  std::vector<Span> out;
  out.reserve(d.edges.size());
  for (const auto& e : d.edges) {
    const auto iu = pos.find(e.u);
    const auto iv = pos.find(e.v);
    if (iu == pos.end() || iv == pos.end()) {
      throw std::invalid_argument("drawing: edge endpoint missing from the spine");
    }
    if (e.u == e.v) throw std::invalid_argument("drawing: loop edge");
    out.push_back({std::min(iu->second, iv->second), std::max(iu->second, iv->second), e.page});
  }
  return out;
}

bool cross(const Span& a, const Span& b) {
  if (a.page != b.page) return false;
  if (a.lo == b.lo || a.lo == b.hi || a.hi == b.lo || a.hi == b.hi) return false;
  const bool lo_in = a.lo < b.lo && b.lo < a.hi;
  const bool hi_in = a.lo < b.hi && b.hi < a.hi;
  return lo_in != hi_in;
}

}  // namespace

void validate(const TwoPageDrawing& d) { (void)spans(d); }

std::int64_t count_crossings(const TwoPageDrawing& d) {
  const auto s = spans(d);
  std::int64_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) count += cross(s[i], s[j]) ? 1 : 0;
  }
  return count;
}

std::int64_t star_crossings(const TwoPageDrawing& d, int r1, int r2) {
  const auto s = spans(d);
  std::vector<std::size_t> a, b;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    const bool at1 = e.u == r1 || e.v == r1;
    const bool at2 = e.u == r2 || e.v == r2;
    if (at1 && !at2) a.push_back(i);
    if (at2 && !at1) b.push_back(i);
  }
  std::int64_t count = 0;
  for (auto i : a) {
    for (auto j : b) count += cross(s[i], s[j]) ? 1 : 0;
  }
  return count;
}

TwoPageDrawing reversed(const TwoPageDrawing& d) {
  TwoPageDrawing r = d;
  std::reverse(r.spine.begin(), r.spine.end());
  return r;
}

TwoPageDrawing pages_swapped(const TwoPageDrawing& d) {
  TwoPageDrawing r = d;
  for (auto& e : r.edges) e.page = e.page == Page::upper ? Page::lower : Page::upper;
  return r;
}

TwoPageDrawing to_spine(const CircularDrawing& c, std::size_t start) {
  TwoPageDrawing d;
  d.edges = c.edges;
  if (c.cycle.empty()) return d;
  start %= c.cycle.size();
  d.spine.reserve(c.cycle.size());
  d.spine.insert(d.spine.end(), c.cycle.begin() + static_cast<std::ptrdiff_t>(start), c.cycle.end());
  d.spine.insert(d.spine.end(), c.cycle.begin(), c.cycle.begin() + static_cast<std::ptrdiff_t>(start));
  return d;
}

TwoPageDrawing drawing_from_cut(const ChordGraph& g, std::span<const std::uint8_t> side) {
  if (side.size() != static_cast<std::size_t>(g.num_chords())) {
    throw std::invalid_argument("drawing_from_cut: cut has wrong length");
  }
  const int n = g.n();
  TwoPageDrawing d;
  d.spine.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d.spine[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < n; ++i) d.edges.push_back({i, (i + 1) % n, Page::upper});
  for (int u = 0; u < g.num_chords(); ++u) {
    const auto& c = g.chord(u);
    d.edges.push_back({c.a, c.b, side[static_cast<std::size_t>(u)] ? Page::lower : Page::upper});
  }
  return d;
}

TwoPageDrawing complete_graph_drawing(int n, Page page) {
  TwoPageDrawing d;
  for (int i = 0; i < n; ++i) {
    d.spine.push_back(i);
    for (int j = i + 1; j < n; ++j) d.edges.push_back({i, j, page});
  }
  return d;
}

TwoPageDrawing zarankiewicz_drawing(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("zarankiewicz_drawing: need m, n >= 1");
  // Planar layout: blues on the x-axis at -1..-left and 1..right, reds on the
  // y-axis at 1..up and -1..-down, straight edges. The spine follows a curve
  // through the left blues (far to near), the upper reds (near to far), the
  // right blues (far to near) and the lower reds (near to far).
  const int left = (m + 1) / 2;
  const int right = m - left;
  const int up = (n + 1) / 2;
  const int down = n - up;
  std::vector<std::pair<int, int>> blue;  // label, signed coordinate
  std::vector<std::pair<int, int>> red;
  for (int k = 0; k < left; ++k) blue.emplace_back(k, -(k + 1));
  for (int k = 0; k < right; ++k) blue.emplace_back(left + k, k + 1);
  for (int k = 0; k < up; ++k) red.emplace_back(m + k, k + 1);
  for (int k = 0; k < down; ++k) red.emplace_back(m + up + k, -(k + 1));

  TwoPageDrawing d;
  for (int k = left - 1; k >= 0; --k) d.spine.push_back(k);
  for (int k = 0; k < up; ++k) d.spine.push_back(m + k);
  for (int k = right - 1; k >= 0; --k) d.spine.push_back(left + k);
  for (int k = 0; k < down; ++k) d.spine.push_back(m + up + k);
  for (const auto& [b, xb] : blue) {
    for (const auto& [r, yr] : red) {
      d.edges.push_back({b, r, (xb > 0) == (yr > 0) ? Page::upper : Page::lower});
    }
  }
  const auto count = count_crossings(d);
  const auto expected = zeta_bipartite(m, n);
  if (count != expected) {
    throw std::logic_error("zarankiewicz_drawing(" + std::to_string(m) + "," + std::to_string(n) +
                           "): counted " + std::to_string(count) + " crossings, expected " +
                           std::to_string(expected));
  }
  return d;
}

TwoPageDrawing normalize_bipartite(const TwoPageDrawing& d, int m) {
  TwoPageDrawing out = d;
  const auto first_blue = std::find_if(out.spine.begin(), out.spine.end(), [m](int v) { return v < m; });
  std::rotate(out.spine.begin(), first_blue, out.spine.end());
  return out;
}

std::vector<RedType> extract_types(const TwoPageDrawing& d, int m, int n) {
  if (m < 1 || m > 31 || n < 0) throw std::invalid_argument("extract_types: bad (m, n)");
  if (d.spine.size() != static_cast<std::size_t>(m + n)) {
    throw std::invalid_argument("extract_types: spine does not hold m + n vertices");
  }
  validate(d);
  const TwoPageDrawing nd = normalize_bipartite(d, m);

  std::vector<int> blue_rank(static_cast<std::size_t>(m), -1);
  std::vector<RedType> types(static_cast<std::size_t>(n));
  int blues_so_far = 0;
  for (int v : nd.spine) {
    if (v < 0 || v >= m + n) throw std::invalid_argument("extract_types: vertex label out of range");
    if (v < m) {
      blue_rank[static_cast<std::size_t>(v)] = blues_so_far++;
    } else {
      types[static_cast<std::size_t>(v - m)].p = blues_so_far - 1;
    }
  }
  std::vector<std::uint32_t> covered(static_cast<std::size_t>(n), 0);
  for (const auto& e : nd.edges) {
    int b = e.u, r = e.v;
    if (b >= m) std::swap(b, r);
    if (b >= m || r < m) throw std::invalid_argument("extract_types: edge is not blue-red");
    const auto ri = static_cast<std::size_t>(r - m);
    const std::uint32_t bit = std::uint32_t{1} << blue_rank[static_cast<std::size_t>(b)];
    if (covered[ri] & bit) throw std::invalid_argument("extract_types: repeated edge");
    covered[ri] |= bit;
    if (e.page == Page::upper) types[ri].upper |= bit;
  }
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  for (auto c : covered) {
    if (c != full) throw std::invalid_argument("extract_types: drawing is not complete bipartite");
  }
  return types;
}

void to_json(nlohmann::json& j, const TwoPageDrawing& d) {
  auto edges = nlohmann::json::array();
  for (const auto& e : d.edges) edges.push_back({e.u, e.v, std::string(to_string(e.page))});
  j = nlohmann::json{{"spine", d.spine}, {"edges", std::move(edges)}};
}

void from_json(const nlohmann::json& j, TwoPageDrawing& d) {
  d.spine = j.at("spine").get<std::vector<int>>();
  d.edges.clear();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("drawing JSON: edge must be [u, v, page]");
    d.edges.push_back({e[0].get<int>(), e[1].get<int>(), parse_page(e[2].get<std::string>())});
  }
}

}  // namespace booknum
