// First-order solver for the reduced Zarankiewicz SDP.
//
// Dual: max t  s.t.  Q - tJ = S + Z,  S PSD,  Z >= 0, with all matrices
// block circulant and stored as orbit rows (i, j, k) over ordered pairs.
// ADMM with blocks S and (t, Z); the (t, Z) step is a one-dimensional
// piecewise quadratic solved after sorting.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "booknum/bipartite_types.hpp"

namespace booknum {

namespace {

using Complex = std::complex<double>;

class OrbitSpace {
 public:
  explicit OrbitSpace(const QMatrix& q) : m_(q.m()), nb_(q.num_orbits()), len_(2 * q.m()) {
    omega_.resize(static_cast<std::size_t>(len_));
    for (int r = 0; r < len_; ++r) {
      const double angle = -2.0 * std::numbers::pi * r / len_;
      omega_[static_cast<std::size_t>(r)] = {std::cos(angle), std::sin(angle)};
    }
  }

  [[nodiscard]] int nb() const { return nb_; }
  [[nodiscard]] int len() const { return len_; }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(nb_) * static_cast<std::size_t>(nb_) * static_cast<std::size_t>(len_); }
  [[nodiscard]] std::size_t at(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(nb_) + static_cast<std::size_t>(j)) * static_cast<std::size_t>(len_) +
           static_cast<std::size_t>(k);
  }

  // Projection of the symmetric block-circulant matrix w onto the PSD cone.
  void project_psd(const std::vector<double>& w, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    Eigen::MatrixXcd h(nb_, nb_);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
    for (int f = 0; f <= m_; ++f) {
      for (int i = 0; i < nb_; ++i) {
        for (int j = 0; j < nb_; ++j) {
          Complex sum(0.0, 0.0);
          for (int k = 0; k < len_; ++k) sum += w[at(i, j, k)] * omega_[static_cast<std::size_t>((f * k) % len_)];
          h(i, j) = sum;
        }
      }
      es.compute(h);
      const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
      const Eigen::MatrixXcd p = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
      // Frequencies f and len - f are conjugate; 0 and m appear once.
      const double weight = (f == 0 || f == m_) ? 1.0 : 2.0;
      for (int i = 0; i < nb_; ++i) {
        for (int j = 0; j < nb_; ++j) {
          const Complex pij = p(i, j);
          for (int k = 0; k < len_; ++k) {
            const Complex back = std::conj(omega_[static_cast<std::size_t>((f * k) % len_)]);
            out[at(i, j, k)] += weight * (pij * back).real() / len_;
          }
        }
      }
    }
  }

 private:
  int m_;
  int nb_;
  int len_;
  std::vector<Complex> omega_;
};

// Smallest t with sum_e max(0, t - v_e) = target (target > 0).
double solve_threshold(std::vector<double> v, double target) {
  std::sort(v.begin(), v.end());
  double prefix = 0.0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    prefix += v[r];
    const double count = static_cast<double>(r + 1);
    const double t = (target + prefix) / count;
    if (r + 1 == v.size() || t <= v[r + 1]) return t;
  }
  return v.back();
}

double norm(const std::vector<double>& a) {
  return std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
}

}  // namespace

ZarCertificate sdp_bound_first_order(const QMatrix& q, const ZarOptions& options) {
  if (q.m() % 2 == 0) throw std::invalid_argument("sdp_bound_first_order: needs odd m");
  const OrbitSpace space(q);
  const int nb = space.nb();
  const int len = space.len();
  const std::size_t n = space.size();

  std::vector<double> qv(n);
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      const auto row = q.orbit_row(i, j);
      for (int k = 0; k < len; ++k) qv[space.at(i, j, k)] = row[static_cast<std::size_t>(k)];
    }
  }
  const double qnorm = 1.0 + norm(qv);
  // Objective weight c t so that the multiplier has entries of order one.
  const double c = static_cast<double>(n);

  std::vector<double> s(n, 0.0), z(n, 0.0), x(n, 0.0), w(n), v(n), best_s(n, 0.0);
  double t = 0.0;
  double sigma = 1.0;
  double best_t = -std::numeric_limits<double>::infinity();
  int best_iteration = 0;
  bool converged = false;
  constexpr int kCheckEvery = 10;
  constexpr int kBalanceEvery = 50;
  constexpr int kStallIterations = 3000;

  for (int it = 1; it <= options.first_order_iterations; ++it) {
    for (std::size_t e = 0; e < n; ++e) w[e] = qv[e] - t - z[e] - x[e] / sigma;
    space.project_psd(w, s);

    for (std::size_t e = 0; e < n; ++e) v[e] = qv[e] - s[e] - x[e] / sigma;
    const double t_old = t;
    t = solve_threshold(v, c / sigma);
    double dual_sq = 0.0;
    double primal_sq = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      const double z_new = std::max(0.0, v[e] - t);
      const double change = (z_new + t) - (z[e] + t_old);
      dual_sq += change * change;
      z[e] = z_new;
      const double r = t + s[e] + z[e] - qv[e];
      primal_sq += r * r;
      x[e] += sigma * r;
    }
    const double rp = std::sqrt(primal_sq) / qnorm;
    const double rd = sigma * std::sqrt(dual_sq) / qnorm;

    if (it % kCheckEvery == 0) {
      double cand = std::numeric_limits<double>::infinity();
      for (std::size_t e = 0; e < n; ++e) cand = std::min(cand, qv[e] - s[e]);
      if (cand > best_t + 1e-12 * (1.0 + std::abs(cand))) {
        best_t = cand;
        best_s = s;
        best_iteration = it;
      }
      if (options.progress) options.progress(it, best_t, rp);
      if (std::abs(t - best_t) <= options.accuracy * (1.0 + std::abs(t)) && rp <= options.accuracy) {
        converged = true;
        break;
      }
      if (it - best_iteration >= kStallIterations) break;
    }
    if (it % kBalanceEvery == 0) {
      if (rp > 10.0 * rd) {
        sigma *= 2.0;
      } else if (rd > 10.0 * rp) {
        sigma /= 2.0;
      }
    }
  }

  ZarCertificate cert = zar_trivial_certificate(q, ZarLayout::reduced);
  cert.converged = converged;
  cert.t = std::isfinite(best_t) ? best_t : 0.0;
  std::size_t slot = 0;
  for (int i = 0; i < nb; ++i) {
    for (int j = i; j < nb; ++j, ++slot) {
      auto& row = cert.blocks[slot];
      for (int k = 0; k < len; ++k) {
        if (i == j) {
          const int mirror = (len - k) % len;
          row[static_cast<std::size_t>(k)] = 0.5 * (best_s[space.at(i, i, k)] + best_s[space.at(i, i, mirror)]);
        } else {
          row[static_cast<std::size_t>(k)] = best_s[space.at(i, j, k)];
        }
      }
    }
  }
  safe_round(cert, q);
  return cert;
}

}  // namespace booknum
