#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "booknum/bipartite_types.hpp"
#include "booknum/gw_bound.hpp"
#include "booknum/maxcut.hpp"
#include "booknum/rational.hpp"

namespace booknum {

/// a n^2 + b n with exact coefficients.
struct QuadraticBound {
  Rational a = 0;
  Rational b = 0;

  [[nodiscard]] Rational at(const Rational& n) const { return a * n * n + b * n; }
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const QuadraticBound&, const QuadraticBound&) = default;
};

/// 64 nu / (m(m-1)(m-2)(m-3)): lower bound on lim nu_2(K_n)/Z(n) from nu_2(K_m) >= nu.
/// Throws std::invalid_argument for m <= 3.
[[nodiscard]] Rational claim_a_ratio(std::int64_t m, const Rational& nu2_lower);

/// nu_2(K_{8,n}) >= (8/6) nu_2(K_{7,n}), applied coefficientwise.
[[nodiscard]] QuadraticBound k7_to_k8_bipartite(const QuadraticBound& bound7);

/// (t/2) n^2 - m(m-1) n / 4.
[[nodiscard]] QuadraticBound bipartite_bound(const Rational& t, int m);

/// Verifies c against Q(m) and returns bipartite_bound(certified t, m).
/// Throws std::invalid_argument with the verifier's reason when c is invalid.
[[nodiscard]] QuadraticBound assemble_bipartite_bound(const ZarCertificate& c, const QMatrix& q);
/// assemble_bipartite_bound for m = 7.
[[nodiscard]] QuadraticBound assemble_k7n_bound(const ZarCertificate& c);

/// Ceiling of (n+1) nu / (n-3) in exact arithmetic, n odd >= 5.
[[nodiscard]] Rational odd_to_even(const Rational& nu_odd, int n_odd);

enum class BoundTarget : std::uint8_t { nu2_complete, nu2_bipartite, asymptotic_ratio };

[[nodiscard]] std::string to_string(BoundTarget t);

using BoundValue = std::variant<Rational, QuadraticBound>;

/**
 * One link of a provenance chain.
 *
 * op is one of
 *   "nu2_exact"        C(n,4) - maxcut upper bound, backed by a maxcut result file
 *   "gw_certificate"   implied bound of a GW certificate file
 *   "zar_certificate"  bipartite_bound of a Zarankiewicz certificate file
 *   "odd_to_even"      odd_to_even of the previous value
 *   "claim_a"          claim_a_ratio of the previous value
 *   "k7_to_k8"         k7_to_k8_bipartite of the previous value
 * params holds the integers the step needs and, for certificate steps, the
 * value recorded when the report was made.
 */
struct ProvenanceStep {
  std::string op;
  nlohmann::json params;
  /// Backing certificate; empty when none was written.
  std::string file;
};

struct BoundReport {
  BoundTarget target = BoundTarget::nu2_complete;
  /// n for nu2_complete, m for nu2_bipartite and asymptotic_ratio.
  int size = 0;
  BoundValue value = Rational(0);
  std::vector<ProvenanceStep> chain;
  /// True when every certificate step re-verified from its file.
  bool verified = false;
};

[[nodiscard]] BoundReport report_nu2_exact(const Nu2Result& r, const std::string& file = {});
[[nodiscard]] BoundReport report_gw(const GwCertificate& c, const std::string& file = {});
[[nodiscard]] BoundReport report_bipartite(const ZarCertificate& c, const std::string& file = {});
/// Extends a nu2_complete(n) report, n odd, to nu2_complete(n + 1).
[[nodiscard]] BoundReport report_odd_to_even(const BoundReport& odd);
[[nodiscard]] BoundReport report_claim_a(const BoundReport& complete);
[[nodiscard]] BoundReport report_k7_to_k8(const BoundReport& k7);

struct ReplayResult {
  BoundValue value = Rational(0);
  bool verified = false;
  /// One line per certificate step that could not be re-verified.
  std::vector<std::string> notes;
};

/// Recomputes the value from the chain alone, re-verifying backing files that exist.
/// Throws std::invalid_argument on an unknown op or a backing file that fails verification.
[[nodiscard]] ReplayResult replay(const std::vector<ProvenanceStep>& chain);

void to_json(nlohmann::json& j, const BoundReport& r);
void from_json(const nlohmann::json& j, BoundReport& r);

/// One row of the small-n table: n, maxcut, C(n,4), nu_2, Z(n).
struct Table1Row {
  int n = 0;
  std::int64_t maxcut = 0;
  std::int64_t c4 = 0;
  std::int64_t nu2 = 0;
  std::int64_t z = 0;
  std::int64_t nodes = 0;
  double seconds = 0.0;
  ProofStatus proof_status = ProofStatus::exact;
};

[[nodiscard]] Table1Row table1_row(const Nu2Result& r);
void to_json(nlohmann::json& j, const Table1Row& r);
void write_table_text(std::ostream& os, const std::vector<Table1Row>& rows);

/// (C(n,4) - GW bound) / Z(n), from a verified reduced GW certificate.
struct RatioRow {
  int n = 0;
  std::int64_t bound = 0;
  std::int64_t z = 0;
  double ratio = 0.0;
};

[[nodiscard]] RatioRow ratio_row(const GwCertificate& c);

}  // namespace booknum
