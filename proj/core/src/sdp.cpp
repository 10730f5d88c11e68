#include "booknum/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace booknum::sdp {

int Problem::add_block(BlockKind kind, int dim) {
  if (dim <= 0) throw std::invalid_argument("sdp::Problem::add_block: dimension must be positive");
  blocks.push_back({kind, dim});
  c.push_back(kind == BlockKind::psd ? Eigen::MatrixXd::Zero(dim, dim)
                                     : Eigen::MatrixXd::Zero(dim, 1));
  return static_cast<int>(blocks.size()) - 1;
}

int Problem::add_constraint(std::vector<Entry> entries, double rhs) {
  constraints.push_back(std::move(entries));
  b.push_back(rhs);
  return static_cast<int>(constraints.size()) - 1;
}

void Problem::validate() const {
  if (c.size() != blocks.size()) throw std::invalid_argument("sdp: C has wrong number of blocks");
  if (b.size() != constraints.size()) throw std::invalid_argument("sdp: b has wrong length");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& blk = blocks[i];
    const Eigen::Index cols = blk.kind == BlockKind::psd ? blk.dim : 1;
    if (c[i].rows() != blk.dim || c[i].cols() != cols) {
      throw std::invalid_argument("sdp: C block " + std::to_string(i) + " has wrong shape");
    }
  }
  for (const auto& con : constraints) {
    for (const auto& e : con) {
      if (e.block < 0 || e.block >= static_cast<int>(blocks.size())) {
        throw std::invalid_argument("sdp: constraint entry refers to a missing block");
      }
      const auto& blk = blocks[static_cast<std::size_t>(e.block)];
      const int col = blk.kind == BlockKind::psd ? e.col : e.row;
      if (e.row < 0 || e.row >= blk.dim || col < 0 || col >= blk.dim) {
        throw std::invalid_argument("sdp: constraint entry index out of range");
      }
    }
  }
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::max_iterations: return "max_iterations";
    case Status::stalled: return "stalled";
    case Status::numerical_error: return "numerical_error";
  }
  return "unknown";
}

namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

struct Coef {
  int row;
  int col;
  double value;
};

// Constraint k restricted to one block, with symmetric entries expanded.
struct Term {
  int constraint;
  std::vector<Coef> coefs;
  bool dense;
};

struct Structure {
  std::vector<std::vector<Term>> by_block;
};

Structure expand(const Problem& p) {
  Structure st;
  st.by_block.resize(p.blocks.size());
  for (int k = 0; k < p.num_constraints(); ++k) {
    std::vector<std::vector<Coef>> per_block(p.blocks.size());
    for (const auto& e : p.constraints[static_cast<std::size_t>(k)]) {
      auto& out = per_block[static_cast<std::size_t>(e.block)];
      if (p.blocks[static_cast<std::size_t>(e.block)].kind == BlockKind::lp) {
        out.push_back({e.row, 0, e.value});
      } else {
        out.push_back({e.row, e.col, e.value});
        if (e.row != e.col) out.push_back({e.col, e.row, e.value});
      }
    }
    for (std::size_t blk = 0; blk < p.blocks.size(); ++blk) {
      if (per_block[blk].empty()) continue;
      const int dim = p.blocks[blk].dim;
      const bool dense = p.blocks[blk].kind == BlockKind::psd &&
                         per_block[blk].size() > static_cast<std::size_t>(2 * dim);
      st.by_block[blk].push_back({k, std::move(per_block[blk]), dense});
    }
  }
  return st;
}

double inner(const Blocks& a, const Blocks& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i].cwiseProduct(b[i]).sum();
  return sum;
}

double norm(const Blocks& a) { return std::sqrt(inner(a, a)); }

Eigen::VectorXd apply_a(const Problem& p, const Structure& st, const Blocks& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p.num_constraints());
  for (std::size_t blk = 0; blk < p.blocks.size(); ++blk) {
    const auto& xb = x[blk];
    for (const auto& term : st.by_block[blk]) {
      double s = 0.0;
      for (const auto& cf : term.coefs) s += cf.value * xb(cf.row, cf.col);
      out(term.constraint) += s;
    }
  }
  return out;
}

Blocks apply_at(const Problem& p, const Structure& st, const Eigen::VectorXd& y) {
  Blocks out(p.blocks.size());
  for (std::size_t blk = 0; blk < p.blocks.size(); ++blk) {
    out[blk] = Eigen::MatrixXd::Zero(p.c[blk].rows(), p.c[blk].cols());
    for (const auto& term : st.by_block[blk]) {
      const double yk = y(term.constraint);
      if (yk == 0.0) continue;
      for (const auto& cf : term.coefs) out[blk](cf.row, cf.col) += yk * cf.value;
    }
  }
  return out;
}

bool is_psd(const Problem& p, std::size_t blk) { return p.blocks[blk].kind == BlockKind::psd; }

Eigen::MatrixXd sym(const Eigen::MatrixXd& a) { return 0.5 * (a + a.transpose()); }

// X * R * Sinv (psd) or x .* r ./ s (lp), per block.
Blocks x_r_sinv(const Problem& p, const Blocks& x, const Blocks& r, const Blocks& sinv) {
  Blocks out(p.blocks.size());
  for (std::size_t blk = 0; blk < p.blocks.size(); ++blk) {
    if (is_psd(p, blk)) {
      out[blk] = x[blk] * r[blk] * sinv[blk];
    } else {
      out[blk] = x[blk].cwiseProduct(r[blk]).cwiseProduct(sinv[blk]);
    }
  }
  return out;
}

double max_step(const Problem& p, std::size_t blk, const Eigen::MatrixXd& x,
                const Eigen::MatrixXd& dx) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (!is_psd(p, blk)) {
    double step = kInf;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (dx(i, 0) < 0.0) step = std::min(step, -x(i, 0) / dx(i, 0));
    }
    return step;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  Eigen::MatrixXd w = llt.matrixL().solve(dx);
  w = llt.matrixL().solve(w.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(w), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

Eigen::MatrixXd schur_complement(const Problem& p, const Structure& st, const Blocks& x,
                                 const Blocks& sinv) {
  const int m = p.num_constraints();
  Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t blk = 0; blk < p.blocks.size(); ++blk) {
    const auto& terms = st.by_block[blk];
    const auto& xb = x[blk];
    const auto& sb = sinv[blk];
    if (!is_psd(p, blk)) {
      // Diagonal block: M_kl += sum_i a_ki a_li x_i / s_i.
      std::vector<std::vector<std::pair<int, double>>> by_index(static_cast<std::size_t>(xb.rows()));
      for (const auto& term : terms) {
        for (const auto& cf : term.coefs) by_index[static_cast<std::size_t>(cf.row)].push_back({term.constraint, cf.value});
      }
      for (std::size_t i = 0; i < by_index.size(); ++i) {
        const double w = xb(static_cast<Eigen::Index>(i), 0) * sb(static_cast<Eigen::Index>(i), 0);
        for (const auto& [k, a] : by_index[i]) {
          for (const auto& [l, c] : by_index[i]) schur(k, l) += w * a * c;
        }
      }
      continue;
    }
    const auto n = xb.rows();
    for (std::size_t lpos = 0; lpos < terms.size(); ++lpos) {
      const auto& tl = terms[lpos];
      if (!tl.dense) continue;
      Eigen::MatrixXd al = Eigen::MatrixXd::Zero(n, n);
      for (const auto& cf : tl.coefs) al(cf.row, cf.col) += cf.value;
      const Eigen::MatrixXd g = xb * al * sb;
      for (std::size_t kpos = 0; kpos < terms.size(); ++kpos) {
        const auto& tk = terms[kpos];
        if (tk.dense && kpos < lpos) continue;
        double v = 0.0;
        for (const auto& cf : tk.coefs) v += cf.value * g(cf.row, cf.col);
        schur(tk.constraint, tl.constraint) += v;
        if (kpos != lpos) schur(tl.constraint, tk.constraint) += v;
      }
    }
    for (std::size_t kpos = 0; kpos < terms.size(); ++kpos) {
      const auto& tk = terms[kpos];
      if (tk.dense) continue;
      for (std::size_t lpos = kpos; lpos < terms.size(); ++lpos) {
        const auto& tl = terms[lpos];
        if (tl.dense) continue;
        double v = 0.0;
        for (const auto& a : tk.coefs) {
          for (const auto& c : tl.coefs) v += a.value * c.value * xb(a.row, c.row) * sb(c.col, a.col);
        }
        schur(tk.constraint, tl.constraint) += v;
        if (kpos != lpos) schur(tl.constraint, tk.constraint) += v;
      }
    }
  }
  return schur;
}

struct Direction {
  Blocks dx;
  Blocks ds;
  Eigen::VectorXd dy;
};

}  // namespace

std::vector<Eigen::MatrixXd> dual_slack(const Problem& problem, const Eigen::VectorXd& y) {
  const Structure st = expand(problem);
  Blocks aty = apply_at(problem, st, y);
  Blocks out(problem.blocks.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = problem.c[i] - aty[i];
  return out;
}

Solution solve(const Problem& problem, const Options& options) {
  problem.validate();
  const Structure st = expand(problem);
  const std::size_t nb = problem.blocks.size();
  const int m = problem.num_constraints();
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(problem.b.data(), m);

  // Infeasible starting point X = xi I, S = eta I, sized per block from the data.
  Blocks x(nb), s(nb);
  double nu = 0.0;
  for (std::size_t blk = 0; blk < nb; ++blk) {
    const int n = problem.blocks[blk].dim;
    nu += n;
    double amax = 0.0, ratio = 0.0;
    for (const auto& term : st.by_block[blk]) {
      double nrm = 0.0;
      for (const auto& cf : term.coefs) nrm += cf.value * cf.value;
      nrm = std::sqrt(nrm);
      amax = std::max(amax, nrm);
      ratio = std::max(ratio, (1.0 + std::abs(b(term.constraint))) / (1.0 + nrm));
    }
    const double sn = std::sqrt(static_cast<double>(n));
    const double xi = std::max({10.0, sn, sn * ratio});
    const double eta = std::max({10.0, sn, amax, problem.c[blk].norm()});
    if (is_psd(problem, blk)) {
      x[blk] = xi * Eigen::MatrixXd::Identity(n, n);
      s[blk] = eta * Eigen::MatrixXd::Identity(n, n);
    } else {
      x[blk] = Eigen::MatrixXd::Constant(n, 1, xi);
      s[blk] = Eigen::MatrixXd::Constant(n, 1, eta);
    }
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  double c_norm = 0.0;
  for (const auto& cb : problem.c) c_norm += cb.squaredNorm();
  c_norm = std::sqrt(c_norm);
  const double b_norm = b.norm();

  Solution sol;
  sol.status = Status::max_iterations;
  int stall_count = 0;

  // Best iterate by scaled merit; returned when later iterations lose accuracy.
  struct Snapshot {
    Blocks x, s;
    Eigen::VectorXd y;
    Progress prog;
    double merit = std::numeric_limits<double>::infinity();
    int iteration = -1;
  } best;

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    Blocks sinv(nb);
    bool ok = true;
    for (std::size_t blk = 0; blk < nb && ok; ++blk) {
      if (is_psd(problem, blk)) {
        Eigen::LLT<Eigen::MatrixXd> llt(s[blk]);
        if (llt.info() != Eigen::Success) {
          ok = false;
          break;
        }
        sinv[blk] = llt.solve(Eigen::MatrixXd::Identity(s[blk].rows(), s[blk].cols()));
        sinv[blk] = sym(sinv[blk]);
      } else {
        sinv[blk] = s[blk].cwiseInverse();
      }
    }
    if (!ok) {
      sol.status = Status::numerical_error;
      break;
    }

    const Eigen::VectorXd rp = b - apply_a(problem, st, x);
    Blocks aty = apply_at(problem, st, y);
    Blocks rd(nb);
    for (std::size_t blk = 0; blk < nb; ++blk) rd[blk] = problem.c[blk] - s[blk] - aty[blk];

    const double pobj = inner(problem.c, x);
    const double dobj = b.dot(y);
    const double gap = inner(x, s);
    const double mu = gap / nu;
    Progress prog;
    prog.iteration = iter;
    prog.primal_objective = pobj;
    prog.dual_objective = dobj;
    prog.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    prog.primal_infeasibility = rp.norm() / (1.0 + b_norm);
    prog.dual_infeasibility = norm(rd) / (1.0 + c_norm);

    sol.iterations = iter;
    const double merit = std::max({prog.relative_gap / options.gap_tol, prog.primal_infeasibility / options.feas_tol,
                                   prog.dual_infeasibility / options.feas_tol});
    if (merit < best.merit) best = Snapshot{x, s, y, prog, merit, iter};

    if (options.on_iteration && options.on_iteration(prog)) {
      sol.status = Status::stalled;
      break;
    }
    if (merit <= 1.0) {
      sol.status = Status::optimal;
      break;
    }
    if (iter == options.max_iterations) {
      sol.status = Status::max_iterations;
      break;
    }
    if (iter - best.iteration >= 8) {
      sol.status = Status::stalled;
      break;
    }

    Eigen::MatrixXd schur = schur_complement(problem, st, x, sinv);
    Eigen::LLT<Eigen::MatrixXd> factor(schur);
    if (factor.info() != Eigen::Success) {
      const double ridge = 1e-13 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur.diagonal().array() += ridge;
      factor.compute(schur);
      if (factor.info() != Eigen::Success) {
        sol.status = Status::numerical_error;
        break;
      }
    }

    const Blocks xrs = x_r_sinv(problem, x, rd, sinv);
    const Eigen::VectorXd a_xrs = apply_a(problem, st, xrs);

    auto direction = [&](const Blocks& h) {
      Direction d;
      const Eigen::VectorXd rhs = rp - apply_a(problem, st, h) + a_xrs;
      d.dy = factor.solve(rhs);
      Blocks atdy = apply_at(problem, st, d.dy);
      d.ds.resize(nb);
      d.dx.resize(nb);
      for (std::size_t blk = 0; blk < nb; ++blk) {
        d.ds[blk] = rd[blk] - atdy[blk];
        if (is_psd(problem, blk)) {
          d.dx[blk] = h[blk] - sym(x[blk] * d.ds[blk] * sinv[blk]);
        } else {
          d.dx[blk] = h[blk] - x[blk].cwiseProduct(d.ds[blk]).cwiseProduct(sinv[blk]);
        }
      }
      return d;
    };
    auto steps = [&](const Direction& d) {
      double ap = std::numeric_limits<double>::infinity();
      double ad = ap;
      for (std::size_t blk = 0; blk < nb; ++blk) {
        ap = std::min(ap, max_step(problem, blk, x[blk], d.dx[blk]));
        ad = std::min(ad, max_step(problem, blk, s[blk], d.ds[blk]));
      }
      return std::pair{ap, ad};
    };

    // Predictor (affine scaling).
    Blocks h(nb);
    for (std::size_t blk = 0; blk < nb; ++blk) h[blk] = -x[blk];
    const Direction pred = direction(h);
    auto [ap_max, ad_max] = steps(pred);
    const double ap_aff = std::min(1.0, ap_max);
    const double ad_aff = std::min(1.0, ad_max);
    double gap_aff = 0.0;
    for (std::size_t blk = 0; blk < nb; ++blk) {
      gap_aff += (x[blk] + ap_aff * pred.dx[blk]).cwiseProduct(s[blk] + ad_aff * pred.ds[blk]).sum();
    }
    const double sigma = std::clamp(std::pow(std::max(gap_aff, 0.0) / std::max(gap, 1e-300), 3.0), 0.0, 1.0);

    // Corrector with second-order term.
    for (std::size_t blk = 0; blk < nb; ++blk) {
      if (is_psd(problem, blk)) {
        h[blk] = sigma * mu * sinv[blk] - x[blk] - sym(pred.dx[blk] * pred.ds[blk] * sinv[blk]);
      } else {
        h[blk] = sigma * mu * sinv[blk] - x[blk] -
                 pred.dx[blk].cwiseProduct(pred.ds[blk]).cwiseProduct(sinv[blk]);
      }
    }
    const Direction corr = direction(h);
    auto [ap_c, ad_c] = steps(corr);
    const double tau = 0.9 + 0.09 * std::min({1.0, ap_aff, ad_aff});
    const double ap = std::min(1.0, tau * ap_c);
    const double ad = std::min(1.0, tau * ad_c);
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stall_count >= 3) {
        sol.status = Status::stalled;
        break;
      }
    } else {
      stall_count = 0;
    }
    for (std::size_t blk = 0; blk < nb; ++blk) {
      x[blk] += ap * corr.dx[blk];
      s[blk] += ad * corr.ds[blk];
      if (is_psd(problem, blk)) {
        x[blk] = sym(x[blk]);
        s[blk] = sym(s[blk]);
      }
    }
    y += ad * corr.dy;
  }

  if (best.iteration >= 0) {
    x = std::move(best.x);
    s = std::move(best.s);
    y = std::move(best.y);
    sol.primal_objective = best.prog.primal_objective;
    sol.dual_objective = best.prog.dual_objective;
    sol.relative_gap = best.prog.relative_gap;
    sol.primal_infeasibility = best.prog.primal_infeasibility;
    sol.dual_infeasibility = best.prog.dual_infeasibility;
  }
  sol.x = std::move(x);
  sol.s = std::move(s);
  sol.y = std::move(y);
  return sol;
}

}  // namespace booknum::sdp
