#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "booknum/pagecount.hpp"
#include "booknum/rational.hpp"

namespace booknum {

/// Largest m accepted by build_type_table.
inline constexpr int kMaxTypeM = 9;

/**
 * All m * 2^m red-vertex types (p, U), 0-based, with index p * 2^m + U.
 *
 * Orbits are taken under the group generated by the flip
 * g1: (p, U) -> (p, complement of U) and the shift
 * g2: (p, U) -> (p + 1 mod m, U + 1 mod m). Each orbit starts at its
 * representative, the lexicographically smallest (p, sorted U). For odd m
 * the orbit is listed as rep, g(rep), g^2(rep), ... with g = g1 g2; orbits
 * are sorted by representative.
 */
class TypeTable {
 public:
  /// Throws std::invalid_argument unless 2 <= m <= kMaxTypeM.
  explicit TypeTable(int m);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int size() const { return m_ << m_; }
  [[nodiscard]] int index(const RedType& t) const { return (t.p << m_) | static_cast<int>(t.upper); }
  [[nodiscard]] RedType type(int index) const {
    return {index >> m_, static_cast<std::uint32_t>(index & ((1 << m_) - 1))};
  }

  [[nodiscard]] RedType flip(const RedType& t) const;
  [[nodiscard]] RedType shift(const RedType& t) const;
  /// g = flip after shift.
  [[nodiscard]] RedType generator(const RedType& t) const { return flip(shift(t)); }

  [[nodiscard]] const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  [[nodiscard]] int orbit_of(int index) const { return orbit_of_[static_cast<std::size_t>(index)]; }

 private:
  int m_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_of_;
};

[[nodiscard]] inline TypeTable build_type_table(int m) { return TypeTable(m); }

/// [sigma, tau]: same-page pairs (i, j), i a blue neighbour of sigma's vertex
/// and j of tau's, that are forced to cross when sigma's vertex lies left of tau's.
[[nodiscard]] int pair_count(const RedType& sigma, const RedType& tau, int m);

/// Forced-crossing matrix Q over Types(m).
class QMatrix {
 public:
  explicit QMatrix(const TypeTable& tt);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] int operator()(int a, int b) const {
    return entries_[static_cast<std::size_t>(a) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(b)];
  }
  [[nodiscard]] int max_entry() const;
  [[nodiscard]] Eigen::MatrixXd dense() const;

  /// Number of orbits (2^(m-1) for odd m).
  [[nodiscard]] int num_orbits() const { return static_cast<int>(orbits_.size()); }
  /// First row q^(i,j) of circulant block (i, j): Q[rep_i, g^k rep_j], k = 0..2m-1. Odd m only.
  [[nodiscard]] std::span<const int> orbit_row(int i, int j) const;
  /// Q with rows and columns in orbit order (odd m).
  [[nodiscard]] std::vector<int> orbit_order() const;

  void write_csv(std::ostream& os) const;

 private:
  int m_;
  int size_;
  std::vector<int> entries_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> rows_;  // orbit rows, (i * B + j) * 2m + k
};

[[nodiscard]] inline QMatrix build_q_matrix(const TypeTable& tt) { return QMatrix(tt); }

/// x^T Q x for x in the standard simplex (checked to 1e-12).
[[nodiscard]] double qp_objective(std::span<const double> x, const QMatrix& q);

/// Type frequencies of a drawing of K_{m,n}, as a simplex point over Types(m).
[[nodiscard]] std::vector<double> type_distribution(const TwoPageDrawing& d, const TypeTable& tt, int n);

enum class ZarLayout : std::uint8_t { reduced, dense };

/**
 * Dual certificate for the SDP relaxation of min x^T Q x over the simplex:
 * Q - tJ = S1 + S2 with S1 PSD and S2 >= 0 entrywise.
 *
 * reduced (odd m): blocks[(i, j)] for i <= j in row-major order holds the
 * first row x^(i,j) in R^(2m) of the circulant block of S1.
 * dense: blocks[r] is row r of S1.
 */
struct ZarCertificate {
  int m = 0;
  ZarLayout layout = ZarLayout::reduced;
  double t = 0.0;
  std::vector<std::vector<double>> blocks;
  double margin = 0.0;
  double tolerance = 0.0;
  bool converged = false;
};

struct ZarVerification {
  bool valid = false;
  std::string reason;
  double margin = 0.0;
  double tolerance = 0.0;
  /// t - (max(0, -margin) + tolerance), exact.
  Rational certified_t = 0;
};

struct ZarOptions {
  double accuracy = 1e-7;
  int max_iterations = 100;
  /// Iteration cap of the first-order solver.
  int first_order_iterations = 20000;
  /// Optional progress sink, called once per solver iteration.
  std::function<void(int iteration, double objective, double gap)> progress;
};

/// Largest odd m solved by the interior-point method; larger odd m use sdp_bound_first_order.
inline constexpr int kZarInteriorMaxM = 5;

/// Reduced (odd m) or dense formulation chosen by m; throws if neither applies.
[[nodiscard]] ZarCertificate sdp_bound_solve(const QMatrix& q, const ZarOptions& options = {});
[[nodiscard]] ZarCertificate sdp_bound_reduced(const QMatrix& q, const ZarOptions& options = {});
/// ADMM on the reduced formulation (odd m). Projects each frequency block onto
/// the PSD cone; the returned certificate is the best safely rounded iterate.
[[nodiscard]] ZarCertificate sdp_bound_first_order(const QMatrix& q, const ZarOptions& options = {});
[[nodiscard]] ZarCertificate sdp_bound_dense(const QMatrix& q, const ZarOptions& options = {});

/// Largest m * 2^m for which the dense formulation is attempted.
inline constexpr int kZarDenseMaxTypes = 200;

/// t = 0, S1 = 0: valid iff Q >= 0.
[[nodiscard]] ZarCertificate zar_trivial_certificate(const QMatrix& q, ZarLayout layout);

/// Lowers t and shifts the S1 diagonal until the certificate verifies.
void safe_round(ZarCertificate& c, const QMatrix& q);

[[nodiscard]] ZarVerification verify_zar_certificate(const ZarCertificate& c, const QMatrix& q);

/// Hermitian frequency block X^(f) of a reduced certificate, f = 0..2m-1.
[[nodiscard]] Eigen::MatrixXcd zar_frequency_block(const ZarCertificate& c, int f);

void to_json(nlohmann::json& j, const ZarCertificate& c);
/// Reads {"kind": "zar", "m", "t", "x_blocks", "tolerance"[, "layout"]}; throws std::invalid_argument.
void from_json(const nlohmann::json& j, ZarCertificate& c);

}  // namespace booknum
