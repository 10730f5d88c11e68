#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace booknum {

using Complex = std::complex<double>;

/**
 * Dense complex Hermitian matrix.
 *
 * Construction checks conjugate symmetry against a representation tolerance
 * and then stores the exactly Hermitian part (A + A*)/2, so the diagonal is
 * real by construction.
 */
class HermitianMat {
 public:
  HermitianMat() = default;

  /// Throws std::invalid_argument if `entries` is not square or violates
  /// conjugate symmetry by more than `symmetry_tol` (relative to max |a_ij|).
  explicit HermitianMat(const Eigen::MatrixXcd& entries, double symmetry_tol = 1e-12);

  /// Real symmetric input.
  explicit HermitianMat(const Eigen::MatrixXd& entries, double symmetry_tol = 1e-12);

  /// Builds the matrix from its upper triangle; the lower triangle is the
  /// conjugate mirror and the diagonal keeps only its real part.
  static HermitianMat from_upper(const Eigen::MatrixXcd& upper);

  [[nodiscard]] int dim() const { return static_cast<int>(entries_.rows()); }
  [[nodiscard]] const Eigen::MatrixXcd& entries() const { return entries_; }
  [[nodiscard]] Complex operator()(int i, int j) const { return entries_(i, j); }

  /// Maximum absolute row sum; an upper bound on the spectral radius.
  [[nodiscard]] double spectral_radius_bound() const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Absolute accuracy to which eigenvalues of a matrix with the given
/// spectral-radius estimate are trusted: 1e-9 * (1 + radius).
[[nodiscard]] double eigen_tolerance(double spectral_radius);

/// All eigenvalues in ascending order (tridiagonalization + implicit QL).
[[nodiscard]] std::vector<double> eigenvalues(const HermitianMat& h);

/// Ascending eigenvalues of a real symmetric matrix (only the lower triangle is read).
[[nodiscard]] std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a);

[[nodiscard]] double min_eigenvalue(const HermitianMat& h);
[[nodiscard]] double min_symmetric_eigenvalue(const Eigen::MatrixXd& a);

struct PsdReport {
  double min_eigenvalue = 0.0;
  /// Accuracy of `min_eigenvalue` (see eigen_tolerance).
  double tolerance = 0.0;

  [[nodiscard]] bool is_psd_at(double tol) const { return min_eigenvalue >= -tol; }
  [[nodiscard]] bool is_psd() const { return is_psd_at(tolerance); }
};

[[nodiscard]] PsdReport psd_report(const HermitianMat& h);
[[nodiscard]] PsdReport psd_report(const Eigen::MatrixXd& symmetric);

/**
 * Eigenvalue at frequency `freq` of the n x n circulant block that links
 * chords of cyclic distance i to chords of cyclic distance j in the chord
 * intersection graph:
 *
 *   sum_{k=1}^{i-1} w^k + sum_{k=n-j+1}^{n-j+i-1} w^k,   w = exp(-2 pi sqrt(-1) freq / n).
 *
 * Requires 2 <= i <= j <= n/2 and 0 <= freq < n.
 */
[[nodiscard]] Complex circulant_block_eigs(int i, int j, int n, int freq);

/// Spectrum of the circulant matrix C[a][b] = first_row[(b - a) mod N]:
/// lambda_t = sum_k first_row[k] * exp(-2 pi sqrt(-1) t k / N), t = 0..N-1.
/// Plain O(N^2) DFT; N is at most a few dozen here.
[[nodiscard]] std::vector<Complex> circulant_spectrum(std::span<const double> first_row);

/// Dense circulant matrix with the given first row.
[[nodiscard]] Eigen::MatrixXd circulant_matrix(std::span<const double> first_row);

/// Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix. Its
/// spectrum is the Hermitian spectrum with every eigenvalue doubled in multiplicity.
[[nodiscard]] Eigen::MatrixXd realify(const Eigen::MatrixXcd& h);

}  // namespace booknum
