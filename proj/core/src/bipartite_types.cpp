#include "booknum/bipartite_types.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "booknum/hermitian_linalg.hpp"
#include "booknum/sdp.hpp"

namespace booknum {

namespace {

std::vector<int> sorted_members(std::uint32_t set, int m) {
  std::vector<int> out;
  for (int i = 0; i < m; ++i) {
    if ((set >> i) & 1U) out.push_back(i);
  }
  return out;
}

bool lex_less(const RedType& a, const RedType& b, int m) {
  if (a.p != b.p) return a.p < b.p;
  return sorted_members(a.upper, m) < sorted_members(b.upper, m);
}

}  // namespace

TypeTable::TypeTable(int m) : m_(m) {
  if (m < 2 || m > kMaxTypeM) {
    throw std::invalid_argument("TypeTable: m must be in [2, " + std::to_string(kMaxTypeM) + "], got " +
                                std::to_string(m));
  }
  const int total = size();
  orbit_of_.assign(static_cast<std::size_t>(total), -1);
  std::vector<std::vector<int>> found;
  for (int start = 0; start < total; ++start) {
    if (orbit_of_[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<int> members{start};
    orbit_of_[static_cast<std::size_t>(start)] = 0;
    for (std::size_t q = 0; q < members.size(); ++q) {
      const RedType t = type(members[q]);
      for (const RedType& next : {flip(t), shift(t)}) {
        const int idx = index(next);
        if (orbit_of_[static_cast<std::size_t>(idx)] < 0) {
          orbit_of_[static_cast<std::size_t>(idx)] = 0;
          members.push_back(idx);
        }
      }
    }
    found.push_back(std::move(members));
  }

  for (auto& orbit : found) {
    const int rep = *std::min_element(orbit.begin(), orbit.end(), [&](int a, int b) {
      return lex_less(type(a), type(b), m_);
    });
    std::vector<int> ordered{rep};
    if (m_ % 2 == 1) {
      for (RedType t = generator(type(rep)); index(t) != rep; t = generator(t)) ordered.push_back(index(t));
    } else {
      std::vector<int> rest;
      for (int v : orbit) {
        if (v != rep) rest.push_back(v);
      }
      std::sort(rest.begin(), rest.end(), [&](int a, int b) { return lex_less(type(a), type(b), m_); });
      ordered.insert(ordered.end(), rest.begin(), rest.end());
    }
    if (ordered.size() != orbit.size()) throw std::logic_error("TypeTable: g does not generate the orbit");
    orbit = std::move(ordered);
  }
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    return lex_less(type(a.front()), type(b.front()), m_);
  });
  orbits_ = std::move(found);
  for (std::size_t o = 0; o < orbits_.size(); ++o) {
    for (int v : orbits_[o]) orbit_of_[static_cast<std::size_t>(v)] = static_cast<int>(o);
  }
}

RedType TypeTable::flip(const RedType& t) const {
  const std::uint32_t full = (std::uint32_t{1} << m_) - 1;
  return {t.p, t.upper ^ full};
}

RedType TypeTable::shift(const RedType& t) const {
  const std::uint32_t full = (std::uint32_t{1} << m_) - 1;
  const std::uint32_t rotated = ((t.upper << 1) | (t.upper >> (m_ - 1))) & full;
  return {(t.p + 1) % m_, rotated};
}

int pair_count(const RedType& sigma, const RedType& tau, int m) {
  const int p = sigma.p;
  const int p2 = tau.p;
  int count = 0;
  for (int i = 0; i < m; ++i) {
    const bool i_up = (sigma.upper >> i) & 1U;
    for (int j = 0; j < m; ++j) {
      const bool j_up = (tau.upper >> j) & 1U;
      if (i_up != j_up) continue;
      const bool forced = (i < j && j <= p) || (j <= p && p2 < i) || (i < j && p2 < i) ||
                          (p < j && j < i && i <= p2);
      if (forced) ++count;
    }
  }
  return count;
}

QMatrix::QMatrix(const TypeTable& tt) : m_(tt.m()), size_(tt.size()), orbits_(tt.orbits()) {
  entries_.resize(static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_));
  for (int a = 0; a < size_; ++a) {
    const RedType s = tt.type(a);
    for (int b = a; b < size_; ++b) {
      const RedType t = tt.type(b);
      int v = 0;
      if (s.p < t.p) {
        v = pair_count(s, t, m_);
      } else if (s.p > t.p) {
        v = pair_count(t, s, m_);
      } else {
        v = std::min(pair_count(s, t, m_), pair_count(t, s, m_));
      }
      entries_[static_cast<std::size_t>(a) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(b)] = v;
      entries_[static_cast<std::size_t>(b) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a)] = v;
    }
  }
  if (m_ % 2 == 1) {
    const auto nb = orbits_.size();
    const auto len = static_cast<std::size_t>(2 * m_);
    rows_.resize(nb * nb * len);
    for (std::size_t i = 0; i < nb; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t k = 0; k < len; ++k) rows_[(i * nb + j) * len + k] = (*this)(orbits_[i][0], orbits_[j][k]);
      }
    }
  }
}

int QMatrix::max_entry() const { return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end()); }

Eigen::MatrixXd QMatrix::dense() const {
  Eigen::MatrixXd out(size_, size_);
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) out(a, b) = (*this)(a, b);
  }
  return out;
}

std::span<const int> QMatrix::orbit_row(int i, int j) const {
  if (m_ % 2 == 0) throw std::logic_error("QMatrix::orbit_row: circulant blocks need odd m");
  const auto nb = orbits_.size();
  const auto len = static_cast<std::size_t>(2 * m_);
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= nb || static_cast<std::size_t>(j) >= nb) {
    throw std::out_of_range("QMatrix::orbit_row: block index out of range");
  }
  return {rows_.data() + (static_cast<std::size_t>(i) * nb + static_cast<std::size_t>(j)) * len, len};
}

std::vector<int> QMatrix::orbit_order() const {
  std::vector<int> order;
  for (const auto& o : orbits_) order.insert(order.end(), o.begin(), o.end());
  return order;
}

void QMatrix::write_csv(std::ostream& os) const {
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      if (b) os << ',';
      os << (*this)(a, b);
    }
    os << '\n';
  }
}

double qp_objective(std::span<const double> x, const QMatrix& q) {
  if (x.size() != static_cast<std::size_t>(q.size())) throw std::invalid_argument("qp_objective: wrong length");
  double sum = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("qp_objective: negative weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("qp_objective: weights do not sum to 1");
  double total = 0.0;
  for (int a = 0; a < q.size(); ++a) {
    if (x[static_cast<std::size_t>(a)] == 0.0) continue;
    double row = 0.0;
    for (int b = 0; b < q.size(); ++b) row += q(a, b) * x[static_cast<std::size_t>(b)];
    total += x[static_cast<std::size_t>(a)] * row;
  }
  return total;
}

std::vector<double> type_distribution(const TwoPageDrawing& d, const TypeTable& tt, int n) {
  const auto types = extract_types(d, tt.m(), n);
  std::vector<double> x(static_cast<std::size_t>(tt.size()), 0.0);
  if (n == 0) throw std::invalid_argument("type_distribution: no red vertices");
  for (const auto& t : types) x[static_cast<std::size_t>(tt.index(t))] += 1.0;
  for (auto& v : x) v /= n;
  return x;
}

// ---------------------------------------------------------------------------
// SDP bound

namespace {

int orbit_count(const QMatrix& q) { return q.num_orbits(); }

std::size_t pair_slot(int i, int j, int nb) {
  // Row-major position of (i, j), i <= j, among upper-triangle pairs.
  return static_cast<std::size_t>(i * nb - i * (i - 1) / 2 + (j - i));
}

Complex omega_power(long long f, long long k, int len) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>((f * k) % len) / len;
  return {std::cos(angle), std::sin(angle)};
}

// Largest double that is <= r.
double round_down(const Rational& r) {
  double d = to_double(r);
  while (exact_rational(d) > r) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

sdp::Options ipm_options(const ZarOptions& zo, double scale) {
  sdp::Options opt;
  opt.gap_tol = std::max(1e-12, zo.accuracy / (1.0 + 2.0 * scale));
  // Only the dual point is used; the primal residual only has to be small.
  opt.feas_tol = 1e-7;
  opt.max_iterations = zo.max_iterations;
  if (zo.progress) {
    opt.on_iteration = [cb = zo.progress](const sdp::Progress& p) {
      cb(p.iteration, p.dual_objective, p.relative_gap);
      return false;
    };
  }
  return opt;
}

// Minimum eigenvalue over all frequency blocks (reduced) or of S1 (dense).
PsdReport certificate_psd(const ZarCertificate& c) {
  PsdReport worst{std::numeric_limits<double>::infinity(), 0.0};
  if (c.layout == ZarLayout::dense) {
    const auto n = static_cast<Eigen::Index>(c.blocks.size());
    Eigen::MatrixXd s(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) s(a, b) = c.blocks[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    return psd_report(s);
  }
  for (int f = 0; f < 2 * c.m; ++f) {
    const PsdReport r = psd_report(HermitianMat::from_upper(zar_frequency_block(c, f)));
    worst.min_eigenvalue = std::min(worst.min_eigenvalue, r.min_eigenvalue);
    worst.tolerance = std::max(worst.tolerance, r.tolerance);
  }
  return worst;
}

// Exact min over entries of q - x, or an empty optional-like flag via ok=false.
Rational min_q_minus_x(const ZarCertificate& c, const QMatrix& q) {
  Rational best = 0;
  bool first = true;
  auto consider = [&](int qv, double x) {
    const Rational v = Rational(qv) - exact_rational(x);
    if (first || v < best) {
      best = v;
      first = false;
    }
  };
  if (c.layout == ZarLayout::dense) {
    for (int a = 0; a < q.size(); ++a) {
      for (int b = 0; b < q.size(); ++b) consider(q(a, b), c.blocks[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
  } else {
    const int nb = orbit_count(q);
    for (int i = 0; i < nb; ++i) {
      for (int j = i; j < nb; ++j) {
        const auto row = q.orbit_row(i, j);
        const auto& x = c.blocks[pair_slot(i, j, nb)];
        for (std::size_t k = 0; k < row.size(); ++k) consider(row[k], x[k]);
      }
    }
  }
  return best;
}

}  // namespace

Eigen::MatrixXcd zar_frequency_block(const ZarCertificate& c, int f) {
  if (c.layout != ZarLayout::reduced) throw std::logic_error("zar_frequency_block: dense certificate");
  const int len = 2 * c.m;
  const auto pairs = c.blocks.size();
  int nb = 0;
  while (static_cast<std::size_t>(nb * (nb + 1) / 2) < pairs) ++nb;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nb, nb);
  for (int i = 0; i < nb; ++i) {
    for (int j = i; j < nb; ++j) {
      const auto& x = c.blocks[pair_slot(i, j, nb)];
      Complex sum(0.0, 0.0);
      for (int k = 0; k < len; ++k) sum += x[static_cast<std::size_t>(k)] * omega_power(f, k, len);
      out(i, j) = sum;
    }
  }
  return out;
}

ZarCertificate zar_trivial_certificate(const QMatrix& q, ZarLayout layout) {
  ZarCertificate c;
  c.m = q.m();
  c.layout = layout;
  if (layout == ZarLayout::dense) {
    c.blocks.assign(static_cast<std::size_t>(q.size()), std::vector<double>(static_cast<std::size_t>(q.size()), 0.0));
  } else {
    if (q.m() % 2 == 0) throw std::invalid_argument("zar_trivial_certificate: reduced layout needs odd m");
    const int nb = orbit_count(q);
    c.blocks.assign(static_cast<std::size_t>(nb * (nb + 1) / 2), std::vector<double>(static_cast<std::size_t>(2 * q.m()), 0.0));
  }
  return c;
}

void safe_round(ZarCertificate& c, const QMatrix& q) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double cap = round_down(min_q_minus_x(c, q));
    c.t = std::min(c.t, cap);
    const PsdReport rep = certificate_psd(c);
    c.margin = rep.min_eigenvalue;
    c.tolerance = rep.tolerance;
    if (rep.min_eigenvalue >= rep.tolerance) return;
    // Adding delta*I to S1 is paid for by lowering t by delta, since J - I >= 0.
    const double delta = std::max(0.0, -rep.min_eigenvalue) + 2.0 * rep.tolerance;
    if (c.layout == ZarLayout::dense) {
      for (std::size_t a = 0; a < c.blocks.size(); ++a) c.blocks[a][a] += delta;
    } else {
      const int nb = orbit_count(q);
      for (int i = 0; i < nb; ++i) c.blocks[pair_slot(i, i, nb)][0] += delta;
    }
    c.t -= delta;
  }
  const PsdReport rep = certificate_psd(c);
  c.margin = rep.min_eigenvalue;
  c.tolerance = rep.tolerance;
}

ZarCertificate sdp_bound_reduced(const QMatrix& q, const ZarOptions& options) {
  const int m = q.m();
  if (m % 2 == 0) throw std::invalid_argument("sdp_bound_reduced: needs odd m");
  const int nb = orbit_count(q);
  const int len = 2 * m;

  // Variable 0 is t; then x^(i,j)_k for i < j (k = 0..2m-1) and the free
  // half x^(i,i)_k, k = 0..m, of each palindromic diagonal row.
  std::vector<int> base(static_cast<std::size_t>(nb * nb), -1);
  int nvars = 1;
  for (int i = 0; i < nb; ++i) {
    for (int j = i; j < nb; ++j) {
      base[static_cast<std::size_t>(i * nb + j)] = nvars;
      nvars += i == j ? m + 1 : len;
    }
  }
  const int lp_rows = nvars - 1;

  sdp::Problem p;
  const int lp = p.add_block(sdp::BlockKind::lp, lp_rows);
  std::vector<int> psd;
  for (int f = 0; f <= m; ++f) psd.push_back(p.add_block(sdp::BlockKind::psd, 2 * nb));

  std::vector<sdp::Entry> t_entries;
  t_entries.reserve(static_cast<std::size_t>(lp_rows));
  for (int r = 0; r < lp_rows; ++r) t_entries.push_back({lp, r, 0, 1.0});
  p.add_constraint(std::move(t_entries), 1.0);

  auto& clp = p.c[static_cast<std::size_t>(lp)];
  for (int i = 0; i < nb; ++i) {
    for (int j = i; j < nb; ++j) {
      const auto row = q.orbit_row(i, j);
      const int b0 = base[static_cast<std::size_t>(i * nb + j)];
      const int count = i == j ? m + 1 : len;
      for (int k = 0; k < count; ++k) {
        const int var = b0 + k;
        const int lp_row = var - 1;
        clp(lp_row, 0) = row[static_cast<std::size_t>(k)];
        std::vector<sdp::Entry> e{{lp, lp_row, 0, 1.0}};
        for (int f = 0; f <= m; ++f) {
          const int blk = psd[static_cast<std::size_t>(f)];
          if (i == j) {
            double r = 1.0;
            if (k == m) {
              r = f % 2 == 0 ? 1.0 : -1.0;
            } else if (k > 0) {
              r = 2.0 * omega_power(f, k, len).real();
            }
            if (std::abs(r) < 1e-14) continue;
            e.push_back({blk, i, i, -r});
            e.push_back({blk, i + nb, i + nb, -r});
          } else {
            const Complex w = omega_power(f, k, len);
            const double a = w.real();
            const double b = w.imag();
            if (std::abs(a) >= 1e-14) {
              e.push_back({blk, i, j, -a});
              e.push_back({blk, i + nb, j + nb, -a});
            }
            if (std::abs(b) >= 1e-14) {
              e.push_back({blk, i, j + nb, b});
              e.push_back({blk, j, i + nb, -b});
            }
          }
        }
        p.add_constraint(std::move(e), 0.0);
      }
    }
  }

  const auto sol = sdp::solve(p, ipm_options(options, static_cast<double>(q.max_entry())));

  ZarCertificate c = zar_trivial_certificate(q, ZarLayout::reduced);
  c.t = sol.y(0);
  c.converged = sol.status == sdp::Status::optimal;
  for (int i = 0; i < nb; ++i) {
    for (int j = i; j < nb; ++j) {
      auto& x = c.blocks[pair_slot(i, j, nb)];
      const int b0 = base[static_cast<std::size_t>(i * nb + j)];
      for (int k = 0; k < len; ++k) {
        const int kk = i == j ? std::min(k, len - k) : k;
        x[static_cast<std::size_t>(k)] = sol.y(b0 + kk);
      }
    }
  }
  safe_round(c, q);
  return c;
}

ZarCertificate sdp_bound_dense(const QMatrix& q, const ZarOptions& options) {
  const int n = q.size();
  if (n > kZarDenseMaxTypes) {
    throw std::invalid_argument("sdp_bound_dense: " + std::to_string(n) + " types exceeds the dense limit of " +
                                std::to_string(kZarDenseMaxTypes));
  }
  sdp::Problem p;
  const int psd = p.add_block(sdp::BlockKind::psd, n);
  const int lp = p.add_block(sdp::BlockKind::lp, n * (n + 1) / 2);
  p.c[static_cast<std::size_t>(psd)] = q.dense();

  std::vector<sdp::Entry> t_entries;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) t_entries.push_back({psd, a, b, 1.0});
  }
  p.add_constraint(std::move(t_entries), 1.0);
  int row = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) p.add_constraint({{psd, a, b, 1.0}, {lp, row++, 0, -1.0}}, 0.0);
  }

  const auto sol = sdp::solve(p, ipm_options(options, static_cast<double>(q.max_entry())));
  ZarCertificate c = zar_trivial_certificate(q, ZarLayout::dense);
  c.t = sol.y(0);
  c.converged = sol.status == sdp::Status::optimal;
  row = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const double s1 = q(a, b) - c.t - std::max(0.0, sol.y(1 + row++));
      c.blocks[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = s1;
      c.blocks[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = s1;
    }
  }
  safe_round(c, q);
  return c;
}

ZarCertificate sdp_bound_solve(const QMatrix& q, const ZarOptions& options) {
  if (q.m() % 2 == 1) return q.m() <= kZarInteriorMaxM ? sdp_bound_reduced(q, options) : sdp_bound_first_order(q, options);
  return sdp_bound_dense(q, options);
}

ZarVerification verify_zar_certificate(const ZarCertificate& c, const QMatrix& q) {
  ZarVerification v;
  if (c.m != q.m()) {
    v.reason = "certificate is for m = " + std::to_string(c.m) + ", Q is for m = " + std::to_string(q.m());
    return v;
  }
  if (!std::isfinite(c.t)) {
    v.reason = "t is not finite";
    return v;
  }
  std::size_t rows = 0, cols = 0;
  if (c.layout == ZarLayout::dense) {
    rows = static_cast<std::size_t>(q.size());
    cols = rows;
  } else {
    if (q.m() % 2 == 0) {
      v.reason = "reduced layout needs odd m";
      return v;
    }
    const auto nb = static_cast<std::size_t>(orbit_count(q));
    rows = nb * (nb + 1) / 2;
    cols = static_cast<std::size_t>(2 * q.m());
  }
  if (c.blocks.size() != rows) {
    v.reason = "expected " + std::to_string(rows) + " blocks, found " + std::to_string(c.blocks.size());
    return v;
  }
  for (const auto& b : c.blocks) {
    if (b.size() != cols) {
      v.reason = "block length " + std::to_string(b.size()) + ", expected " + std::to_string(cols);
      return v;
    }
    for (double x : b) {
      if (!std::isfinite(x)) {
        v.reason = "non-finite entry";
        return v;
      }
    }
  }
  if (c.layout == ZarLayout::dense) {
    for (std::size_t a = 0; a < rows; ++a) {
      for (std::size_t b = a + 1; b < rows; ++b) {
        if (c.blocks[a][b] != c.blocks[b][a]) {
          v.reason = "S1 is not symmetric at (" + std::to_string(a) + ", " + std::to_string(b) + ")";
          return v;
        }
      }
    }
  } else {
    const int nb = orbit_count(q);
    const int len = 2 * q.m();
    for (int i = 0; i < nb; ++i) {
      const auto& x = c.blocks[pair_slot(i, i, nb)];
      for (int k = 1; k < len; ++k) {
        if (x[static_cast<std::size_t>(k)] != x[static_cast<std::size_t>(len - k)]) {
          v.reason = "palindrome condition fails in diagonal block " + std::to_string(i) + " at k = " + std::to_string(k);
          return v;
        }
      }
    }
  }
  const Rational t = exact_rational(c.t);
  if (min_q_minus_x(c, q) < t) {
    v.reason = "elementwise condition q - t - x >= 0 fails";
    return v;
  }
  const PsdReport rep = certificate_psd(c);
  v.margin = rep.min_eigenvalue;
  v.tolerance = rep.tolerance;
  if (rep.min_eigenvalue < -rep.tolerance) {
    std::ostringstream msg;
    msg << "minimum eigenvalue " << std::scientific << std::setprecision(3) << rep.min_eigenvalue << " below -" << rep.tolerance;
    v.reason = msg.str();
    return v;
  }
  v.certified_t = t - exact_rational(std::max(0.0, -rep.min_eigenvalue)) - exact_rational(rep.tolerance);
  v.valid = true;
  return v;
}

void to_json(nlohmann::json& j, const ZarCertificate& c) {
  j = nlohmann::json{{"schema", 1},
                     {"kind", "zar"},
                     {"m", c.m},
                     {"layout", c.layout == ZarLayout::dense ? "dense" : "reduced"},
                     {"t", c.t},
                     {"x_blocks", c.blocks},
                     {"tolerance", c.tolerance},
                     {"margin", c.margin},
                     {"converged", c.converged}};
}

void from_json(const nlohmann::json& j, ZarCertificate& c) {
  try {
    if (j.at("kind").get<std::string>() != "zar") throw std::invalid_argument("certificate kind is not \"zar\"");
    c.m = j.at("m").get<int>();
    const std::string layout = j.value("layout", std::string("reduced"));
    if (layout == "reduced") {
      c.layout = ZarLayout::reduced;
    } else if (layout == "dense") {
      c.layout = ZarLayout::dense;
    } else {
      throw std::invalid_argument("unknown layout '" + layout + "'");
    }
    c.t = j.at("t").get<double>();
    c.blocks = j.at("x_blocks").get<std::vector<std::vector<double>>>();
    c.tolerance = j.at("tolerance").get<double>();
    c.margin = j.value("margin", 0.0);
    c.converged = j.value("converged", false);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed zar certificate: ") + e.what());
  }
}

}  // namespace booknum
