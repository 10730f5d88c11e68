#include "booknum/hermitian_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace booknum {

namespace {

void check_hermitian(const Eigen::MatrixXcd& a, double tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("HermitianMat: matrix is not square");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    throw std::invalid_argument("HermitianMat: conjugate symmetry violated by " +
                                std::to_string(asym));
  }
}

}  // namespace

HermitianMat::HermitianMat(const Eigen::MatrixXcd& entries, double symmetry_tol) {
  check_hermitian(entries, symmetry_tol);
  entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianMat::HermitianMat(const Eigen::MatrixXd& entries, double symmetry_tol)
    : HermitianMat(Eigen::MatrixXcd(entries.cast<Complex>()), symmetry_tol) {}

HermitianMat HermitianMat::from_upper(const Eigen::MatrixXcd& upper) {
  if (upper.rows() != upper.cols()) {
    throw std::invalid_argument("HermitianMat::from_upper: matrix is not square");
  }
  Eigen::MatrixXcd full = upper;
  for (Eigen::Index i = 0; i < full.rows(); ++i) {
    full(i, i) = Complex(full(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < full.cols(); ++j) {
      full(j, i) = std::conj(full(i, j));
    }
  }
  HermitianMat h;
  h.entries_ = std::move(full);
  return h;
}

double HermitianMat::spectral_radius_bound() const {
  if (entries_.size() == 0) return 0.0;
  return entries_.cwiseAbs().rowwise().sum().maxCoeff();
}

double eigen_tolerance(double spectral_radius) { return 1e-9 * (1.0 + spectral_radius); }

std::vector<double> eigenvalues(const HermitianMat& h) {
  if (h.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues: QL iteration did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigenvalues: not square");
  if (a.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric_eigenvalues: QL iteration did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue(const HermitianMat& h) {
  const auto ev = eigenvalues(h);
  return ev.empty() ? 0.0 : ev.front();
}

double min_symmetric_eigenvalue(const Eigen::MatrixXd& a) {
  const auto ev = symmetric_eigenvalues(a);
  return ev.empty() ? 0.0 : ev.front();
}

PsdReport psd_report(const HermitianMat& h) {
  return {min_eigenvalue(h), eigen_tolerance(h.spectral_radius_bound())};
}

PsdReport psd_report(const Eigen::MatrixXd& symmetric) {
  const double radius =
      symmetric.size() == 0 ? 0.0 : symmetric.cwiseAbs().rowwise().sum().maxCoeff();
  return {min_symmetric_eigenvalue(symmetric), eigen_tolerance(radius)};
}

Complex circulant_block_eigs(int i, int j, int n, int freq) {
  if (n < 4 || i < 2 || i > j || j > n / 2) {
    throw std::out_of_range("circulant_block_eigs: need 2 <= i <= j <= n/2");
  }
  if (freq < 0 || freq >= n) throw std::out_of_range("circulant_block_eigs: frequency out of range");
  auto phase = [&](int k) {
    // Reduce k * freq mod n first so the argument stays small.
    const long long r = (static_cast<long long>(k) * freq) % n;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / n;
    return Complex(std::cos(angle), std::sin(angle));
  };
  Complex sum(0.0, 0.0);
  for (int k = 1; k <= i - 1; ++k) sum += phase(k);
  for (int k = n - j + 1; k <= n - j + i - 1; ++k) sum += phase(k);
  return sum;
}

std::vector<Complex> circulant_spectrum(std::span<const double> first_row) {
  const auto n = static_cast<long long>(first_row.size());
  std::vector<Complex> out(first_row.size());
  for (long long t = 0; t < n; ++t) {
    Complex sum(0.0, 0.0);
    for (long long k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((t * k) % n) / n;
      sum += first_row[k] * Complex(std::cos(angle), std::sin(angle));
    }
    out[t] = sum;
  }
  return out;
}

Eigen::MatrixXd circulant_matrix(std::span<const double> first_row) {
  const auto n = static_cast<Eigen::Index>(first_row.size());
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) c(a, b) = first_row[((b - a) % n + n) % n];
  }
  return c;
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& h) {
  const auto n = h.rows();
  Eigen::MatrixXd r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = h.real();
  r.bottomRightCorner(n, n) = h.real();
  r.topRightCorner(n, n) = -h.imag();
  r.bottomLeftCorner(n, n) = h.imag();
  return r;
}

}  // namespace booknum
