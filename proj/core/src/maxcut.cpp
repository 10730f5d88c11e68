#include "booknum/maxcut.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "booknum/hermitian_linalg.hpp"
#include "booknum/sdp.hpp"

namespace booknum {

SimpleGraph SimpleGraph::from(const ChordGraph& g) { return {g.num_chords(), g.edges()}; }

std::int64_t cut_value(const SimpleGraph& g, std::span<const std::uint8_t> side) {
  if (side.size() != static_cast<std::size_t>(g.n)) throw std::invalid_argument("cut_value: wrong length");
  std::int64_t v = 0;
  for (const auto& [a, b] : g.edges) v += side[static_cast<std::size_t>(a)] != side[static_cast<std::size_t>(b)] ? 1 : 0;
  return v;
}

std::string_view to_string(ProofStatus s) { return s == ProofStatus::exact ? "exact" : "bound_only"; }

namespace {

using Clock = std::chrono::steady_clock;
using Spins = std::vector<std::int8_t>;

constexpr int kAnchor = -1;

// Triangle inequality s01 x0x1 + s02 x0x2 + s12 x1x2 >= -1 over three
// variables with v[0] < v[1] < v[2]; kAnchor is the constant-one variable.
struct TriangleCut {
  std::array<int, 3> v{};
  std::array<std::int8_t, 3> s{};

  friend auto operator<=>(const TriangleCut&, const TriangleCut&) = default;
};

// Pair slot of (i, j) inside a sorted triple: (0,1) -> 0, (0,2) -> 1, (1,2) -> 2.
int slot(int i, int j) { return i + j - 1; }

TriangleCut make_cut(std::array<int, 3> v, std::array<std::int8_t, 3> s) {
  std::array<int, 3> perm{0, 1, 2};
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return v[static_cast<std::size_t>(a)] < v[static_cast<std::size_t>(b)]; });
  TriangleCut c;
  for (int i = 0; i < 3; ++i) c.v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int pi = perm[static_cast<std::size_t>(i)];
      const int pj = perm[static_cast<std::size_t>(j)];
      c.s[static_cast<std::size_t>(slot(i, j))] = s[static_cast<std::size_t>(slot(std::min(pi, pj), std::max(pi, pj)))];
    }
  }
  return c;
}

constexpr std::array<std::array<std::int8_t, 3>, 4> kPatterns{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};

struct Node {
  Spins fixed;  // spins of order[0 .. fixed.size())
  double parent_bound = 0.0;
  std::vector<TriangleCut> cuts;
};

struct NodeBound {
  double bound = 0.0;
  Eigen::MatrixXd x;
  std::vector<TriangleCut> cuts;
};

class BranchAndBound {
 public:
  BranchAndBound(const SimpleGraph& g, const MaxcutOptions& opt)
      : g_(g), opt_(opt), rng_(opt.seed), start_(Clock::now()) {
    nbr_.resize(static_cast<std::size_t>(g.n));
    for (const auto& [a, b] : g.edges) {
      if (a < 0 || b < 0 || a >= g.n || b >= g.n || a == b) throw std::invalid_argument("maxcut: bad edge");
      nbr_[static_cast<std::size_t>(a)].push_back(b);
      nbr_[static_cast<std::size_t>(b)].push_back(a);
    }
    order_.resize(static_cast<std::size_t>(g.n));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return nbr_[static_cast<std::size_t>(a)].size() > nbr_[static_cast<std::size_t>(b)].size();
    });
    pos_.resize(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) pos_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = i;
  }

  MaxcutResult run() {
    MaxcutResult res;
    best_ = Spins(static_cast<std::size_t>(g_.n), 1);
    incumbent_ = value(best_);
    multistart();

    std::vector<Node> stack;
    if (g_.n > 0) {
      Node root;
      root.fixed = {1};
      root.parent_bound = static_cast<double>(g_.edges.size());
      stack.push_back(std::move(root));
    }
    bool exhausted = false;
    auto last_beat = Clock::now();
    while (!stack.empty()) {
      if (budget_exceeded()) {
        exhausted = true;
        break;
      }
      Node node = std::move(stack.back());
      stack.pop_back();
      if (!can_improve(node.parent_bound)) continue;
      ++nodes_;
      if (opt_.heartbeat && seconds_since(last_beat) >= opt_.heartbeat_seconds) {
        last_beat = Clock::now();
        opt_.heartbeat({nodes_, incumbent_, static_cast<std::int64_t>(stack.size()), elapsed()});
      }
      const int free = g_.n - static_cast<int>(node.fixed.size());
      if (free <= opt_.enumerate_below) {
        enumerate(node.fixed);
        continue;
      }
      const bool is_root = nodes_ == 1;
      NodeBound nb = bound(node, is_root ? opt_.root_cut_rounds : opt_.node_cut_rounds);
      if (is_root) res.root_bound = nb.bound;
      if (!can_improve(nb.bound)) continue;

      const std::int8_t preferred = nb.x(0, 1) >= 0.0 ? 1 : -1;
      for (const std::int8_t sign : {static_cast<std::int8_t>(-preferred), preferred}) {
        Node child;
        child.fixed = node.fixed;
        child.fixed.push_back(sign);
        child.parent_bound = nb.bound;
        child.cuts = nb.cuts;
        stack.push_back(std::move(child));
      }
    }

    res.optimum = incumbent_;
    res.witness.side.resize(static_cast<std::size_t>(g_.n));
    for (int v = 0; v < g_.n; ++v) res.witness.side[static_cast<std::size_t>(v)] = best_[static_cast<std::size_t>(v)] > 0 ? 0 : 1;
    res.witness.value = cut_value(g_, res.witness.side);
    res.nodes_explored = nodes_;
    res.seconds = elapsed();
    if (exhausted) {
      std::int64_t ub = incumbent_;
      for (const auto& node : stack) ub = std::max(ub, floor_bound(node.parent_bound));
      res.upper_bound = ub;
      res.proof_status = ub == incumbent_ ? ProofStatus::exact : ProofStatus::bound_only;
    } else {
      res.upper_bound = incumbent_;
      res.proof_status = ProofStatus::exact;
    }
    return res;
  }

 private:
  static double eps(double b) { return 1e-6 * (1.0 + std::abs(b)); }
  static std::int64_t floor_bound(double b) { return static_cast<std::int64_t>(std::floor(b + eps(b))); }
  bool can_improve(double b) const { return floor_bound(b) > incumbent_; }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  static double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  }
  bool budget_exceeded() const {
    if (opt_.max_nodes >= 0 && nodes_ >= opt_.max_nodes) return true;
    return elapsed() > opt_.max_seconds;
  }

  std::int64_t value(const Spins& x) const {
    std::int64_t v = 0;
    for (const auto& [a, b] : g_.edges) v += x[static_cast<std::size_t>(a)] != x[static_cast<std::size_t>(b)] ? 1 : 0;
    return v;
  }

  int gain(const Spins& x, int v) const {
    int gsum = 0;
    for (int u : nbr_[static_cast<std::size_t>(v)]) gsum += x[static_cast<std::size_t>(u)] * x[static_cast<std::size_t>(v)];
    return gsum;
  }

  // Flip single vertices while that increases the cut.
  void one_opt(Spins& x) const {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int v = 0; v < g_.n; ++v) {
        if (gain(x, v) > 0) {
          x[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(-x[static_cast<std::size_t>(v)]);
          improved = true;
        }
      }
    }
  }

  void offer(Spins x) {
    one_opt(x);
    const auto v = value(x);
    if (v > incumbent_) {
      incumbent_ = v;
      // Keep the first branching vertex on side 0.
      if (g_.n > 0 && x[static_cast<std::size_t>(order_[0])] < 0) {
        for (auto& s : x) s = static_cast<std::int8_t>(-s);
      }
      best_ = std::move(x);
    }
  }

  void multistart() {
    std::bernoulli_distribution coin(0.5);
    for (int t = 0; t < 32; ++t) {
      Spins x(static_cast<std::size_t>(g_.n));
      for (auto& s : x) s = coin(rng_) ? 1 : -1;
      offer(std::move(x));
    }
  }

  void enumerate(const Spins& fixed) {
    Spins x(static_cast<std::size_t>(g_.n), 1);
    for (std::size_t i = 0; i < fixed.size(); ++i) x[static_cast<std::size_t>(order_[i])] = fixed[i];
    std::vector<int> free_vars(order_.begin() + static_cast<std::ptrdiff_t>(fixed.size()), order_.end());
    std::int64_t cur = value(x);
    std::int64_t best = cur;
    Spins best_x = x;
    const std::uint64_t count = std::uint64_t{1} << free_vars.size();
    for (std::uint64_t k = 1; k < count; ++k) {
      const int bit = std::countr_zero(k);
      const int v = free_vars[static_cast<std::size_t>(bit)];
      cur += gain(x, v);
      x[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(-x[static_cast<std::size_t>(v)]);
      if (cur > best) {
        best = cur;
        best_x = x;
      }
    }
    if (best > incumbent_) {
      incumbent_ = best;
      best_ = std::move(best_x);
    }
  }

  // Local index: 0 is the anchor, free vertex order[k + i] is 1 + i.
  struct Local {
    int index;
    std::int8_t sign;
  };

  Local localize(int global, const Spins& fixed) const {
    if (global == kAnchor) return {0, 1};
    const int p = pos_[static_cast<std::size_t>(global)];
    const int k = static_cast<int>(fixed.size());
    if (p < k) return {0, fixed[static_cast<std::size_t>(p)]};
    return {1 + p - k, 1};
  }

  int globalize(int local, const Spins& fixed) const {
    if (local == 0) return kAnchor;
    return order_[fixed.size() + static_cast<std::size_t>(local - 1)];
  }

  NodeBound bound(const Node& node, int max_rounds) {
    const Spins& fixed = node.fixed;
    const int k = static_cast<int>(fixed.size());
    const int dim = 1 + g_.n - k;

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& [a, b] : g_.edges) {
      const Local la = localize(a, fixed);
      const Local lb = localize(b, fixed);
      const double prod = la.sign * lb.sign;
      m(la.index, la.index) += 1.0;
      m(lb.index, lb.index) += 1.0;
      m(la.index, lb.index) -= prod;
      m(lb.index, la.index) -= prod;
    }

    // Inherited cuts in local coordinates; cuts that collapse onto the anchor are dropped.
    std::set<TriangleCut> global_set;
    std::vector<TriangleCut> global_cuts;
    std::vector<TriangleCut> local_cuts;
    auto add_cut = [&](const TriangleCut& gc) {
      std::array<int, 3> idx{};
      std::array<std::int8_t, 3> sg{};
      for (int i = 0; i < 3; ++i) {
        const Local l = localize(gc.v[static_cast<std::size_t>(i)], fixed);
        idx[static_cast<std::size_t>(i)] = l.index;
        sg[static_cast<std::size_t>(i)] = l.sign;
      }
      if (idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2]) return;
      if (!global_set.insert(gc).second) return;
      std::array<std::int8_t, 3> s{};
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          s[static_cast<std::size_t>(slot(i, j))] = static_cast<std::int8_t>(
              gc.s[static_cast<std::size_t>(slot(i, j))] * sg[static_cast<std::size_t>(i)] * sg[static_cast<std::size_t>(j)]);
        }
      }
      global_cuts.push_back(gc);
      local_cuts.push_back(make_cut(idx, s));
    };
    for (const auto& gc : node.cuts) add_cut(gc);

    NodeBound out;
    out.bound = node.parent_bound;
    double prev = std::numeric_limits<double>::infinity();
    for (int round = 0;; ++round) {
      const auto [bnd, sol] = solve_relaxation(m, local_cuts);
      if (bnd < out.bound || round == 0) {
        out.bound = std::min(bnd, node.parent_bound);
        out.x = sol.x[0];
      }
      round_solution(sol.x[0], fixed);
      if (!can_improve(out.bound) || round >= max_rounds || budget_exceeded()) break;
      const double gap = out.bound - static_cast<double>(incumbent_ + 1);
      if (round > 0 && prev - bnd < 0.02 * gap) break;
      prev = bnd;

      // Drop slack cuts, then add the most violated triangles.
      if (!local_cuts.empty()) {
        std::vector<TriangleCut> keep_g, keep_l;
        for (std::size_t c = 0; c < local_cuts.size(); ++c) {
          if (sol.x[1](static_cast<Eigen::Index>(c), 0) < 1e-2) {
            keep_g.push_back(global_cuts[c]);
            keep_l.push_back(local_cuts[c]);
          }
        }
        global_cuts = std::move(keep_g);
        local_cuts = std::move(keep_l);
        global_set = std::set<TriangleCut>(global_cuts.begin(), global_cuts.end());
      }
      const auto found = separate(sol.x[0], static_cast<std::size_t>(6 * dim));
      if (found.empty()) break;
      for (const auto& lc : found) {
        std::array<int, 3> gv{};
        for (int i = 0; i < 3; ++i) gv[static_cast<std::size_t>(i)] = globalize(lc.v[static_cast<std::size_t>(i)], fixed);
        add_cut(make_cut(gv, lc.s));
      }
    }
    out.cuts = std::move(global_cuts);
    return out;
  }

  struct Relaxed {
    double bound;
    sdp::Solution sol;
  };

  Relaxed solve_relaxation(const Eigen::MatrixXd& m, const std::vector<TriangleCut>& cuts) const {
    const int dim = static_cast<int>(m.rows());
    sdp::Problem p;
    const int psd = p.add_block(sdp::BlockKind::psd, dim);
    p.c[static_cast<std::size_t>(psd)] = -0.25 * m;
    int lp = -1;
    if (!cuts.empty()) lp = p.add_block(sdp::BlockKind::lp, static_cast<int>(cuts.size()));
    for (int i = 0; i < dim; ++i) p.add_constraint({{psd, i, i, 1.0}}, 1.0);
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      const auto& t = cuts[c];
      p.add_constraint({{psd, t.v[0], t.v[1], 0.5 * t.s[0]},
                        {psd, t.v[0], t.v[2], 0.5 * t.s[1]},
                        {psd, t.v[1], t.v[2], 0.5 * t.s[2]},
                        {lp, static_cast<int>(c), 0, -1.0}},
                       -1.0);
    }
    sdp::Options so;
    so.gap_tol = 1e-7;
    so.feas_tol = 1e-7;
    so.max_iterations = 80;
    sdp::Solution sol = sdp::solve(p, so);
    if (sol.x.size() < 2) sol.x.push_back(Eigen::MatrixXd::Zero(0, 1));

    // Dual point made feasible: clip cut multipliers, shift the diagonal.
    Eigen::MatrixXd s = -0.25 * m;
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
      s(i, i) -= sol.y(i);
      total -= sol.y(i);
    }
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      const double yc = std::max(0.0, sol.y(dim + static_cast<Eigen::Index>(c)));
      if (yc == 0.0) continue;
      const auto& t = cuts[c];
      const std::array<std::pair<int, int>, 3> pairs{{{t.v[0], t.v[1]}, {t.v[0], t.v[2]}, {t.v[1], t.v[2]}}};
      for (int q = 0; q < 3; ++q) {
        const double h = 0.5 * yc * t.s[static_cast<std::size_t>(q)];
        s(pairs[static_cast<std::size_t>(q)].first, pairs[static_cast<std::size_t>(q)].second) -= h;
        s(pairs[static_cast<std::size_t>(q)].second, pairs[static_cast<std::size_t>(q)].first) -= h;
      }
      total += yc;
    }
    const PsdReport rep = psd_report(s);
    const double shift = std::max(0.0, -rep.min_eigenvalue) + rep.tolerance;
    total += dim * shift;
    return {total, std::move(sol)};
  }

  std::vector<TriangleCut> separate(const Eigen::MatrixXd& x, std::size_t limit) const {
    const auto dim = static_cast<int>(x.rows());
    std::vector<std::pair<double, TriangleCut>> found;
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        for (int k = j + 1; k < dim; ++k) {
          const double a = x(i, j), b = x(i, k), c = x(j, k);
          for (const auto& pat : kPatterns) {
            const double viol = -1.0 - (pat[0] * a + pat[1] * b + pat[2] * c);
            if (viol > 1e-4) found.push_back({viol, TriangleCut{{i, j, k}, pat}});
          }
        }
      }
    }
    if (found.size() > limit) {
      std::partial_sort(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(limit), found.end(),
                        [](const auto& l, const auto& r) { return l.first > r.first; });
      found.resize(limit);
    }
    std::vector<TriangleCut> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(f.second);
    return out;
  }

  // Random-hyperplane rounding of the relaxation followed by 1-opt.
  void round_solution(const Eigen::MatrixXd& x, const Spins& fixed) {
    if (x.rows() == 0) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    const Eigen::MatrixXd v =
        es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    std::normal_distribution<double> gauss;
    const int k = static_cast<int>(fixed.size());
    for (int trial = 0; trial < 8; ++trial) {
      Eigen::VectorXd r(v.cols());
      for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = gauss(rng_);
      const Eigen::VectorXd proj = v * r;
      const double anchor = proj(0) >= 0.0 ? 1.0 : -1.0;
      Spins s(static_cast<std::size_t>(g_.n));
      for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = fixed[static_cast<std::size_t>(i)];
      for (int l = 1; l < x.rows(); ++l) {
        s[static_cast<std::size_t>(order_[static_cast<std::size_t>(k + l - 1)])] = proj(l) * anchor >= 0.0 ? 1 : -1;
      }
      offer(std::move(s));
    }
  }

  const SimpleGraph& g_;
  MaxcutOptions opt_;
  std::mt19937_64 rng_;
  Clock::time_point start_;
  std::vector<std::vector<int>> nbr_;
  std::vector<int> order_;
  std::vector<int> pos_;
  Spins best_;
  std::int64_t incumbent_ = 0;
  std::int64_t nodes_ = 0;
};

}  // namespace

MaxcutResult maxcut_exact(const SimpleGraph& g, const MaxcutOptions& options) {
  if (g.n < 0) throw std::invalid_argument("maxcut_exact: negative vertex count");
  if (options.max_nodes == 0 || !(options.max_seconds > 0.0)) {
    throw std::invalid_argument("maxcut_exact: budget must be positive");
  }
  return BranchAndBound(g, options).run();
}

MaxcutResult maxcut_exact(const ChordGraph& g, const MaxcutOptions& options) {
  return maxcut_exact(SimpleGraph::from(g), options);
}

Nu2Result nu2_complete_exact(int n, const MaxcutOptions& options) {
  if (n < 3) throw std::invalid_argument("nu2_complete_exact: need n >= 3");
  Nu2Result r;
  r.n = n;
  if (n == 3) {
    r.witness = complete_graph_drawing(3);
    return r;
  }
  const ChordGraph g(n);
  r.maxcut = maxcut_exact(g, options);
  const std::int64_t e = binomial(n, 4);
  r.witness = drawing_from_cut(g, r.maxcut.witness.side);
  r.value = count_crossings(r.witness);
  if (r.value != e - r.maxcut.witness.value) {
    throw std::logic_error("nu2_complete_exact: witness drawing disagrees with its cut");
  }
  r.lower_bound = e - r.maxcut.upper_bound;
  r.proof_status = r.maxcut.proof_status;
  return r;
}

std::int64_t odd_to_even_step(std::int64_t nu_odd, int n_odd) {
  if (n_odd < 5 || n_odd % 2 == 0) {
    throw std::invalid_argument("odd_to_even_step: need odd n >= 5, got " + std::to_string(n_odd));
  }
  if (nu_odd < 0) throw std::invalid_argument("odd_to_even_step: negative bound");
  const std::int64_t num = static_cast<std::int64_t>(n_odd + 1) * nu_odd;
  const std::int64_t den = n_odd - 3;
  return (num + den - 1) / den;
}

void to_json(nlohmann::json& j, const MaxcutResult& r) {
  std::string bits;
  bits.reserve(r.witness.side.size());
  for (auto s : r.witness.side) bits.push_back(s ? '1' : '0');
  j = nlohmann::json{{"optimum", r.optimum},
                     {"upper_bound", r.upper_bound},
                     {"proof_status", std::string(to_string(r.proof_status))},
                     {"nodes_explored", r.nodes_explored},
                     {"seconds", r.seconds},
                     {"root_bound", r.root_bound},
                     {"witness", bits}};
}

}  // namespace booknum
