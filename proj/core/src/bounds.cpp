#include "booknum/bounds.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace booknum {

std::string QuadraticBound::to_string() const {
  std::ostringstream os;
  os << "(" << booknum::to_string(a) << ")n^2 ";
  if (b < 0) {
    os << "- (" << booknum::to_string(-b) << ")n";
  } else {
    os << "+ (" << booknum::to_string(b) << ")n";
  }
  return os.str();
}

Rational claim_a_ratio(std::int64_t m, const Rational& nu2_lower) {
  if (m <= 3) throw std::invalid_argument("claim_a_ratio: need m > 3, got " + std::to_string(m));
  const BigInt mm(m);
  return Rational(64) * nu2_lower / Rational(mm * (mm - 1) * (mm - 2) * (mm - 3));
}

QuadraticBound k7_to_k8_bipartite(const QuadraticBound& bound7) {
  const Rational factor(8, 6);
  return {bound7.a * factor, bound7.b * factor};
}

QuadraticBound bipartite_bound(const Rational& t, int m) {
  return {t / 2, -Rational(static_cast<std::int64_t>(m) * (m - 1), 4)};
}

QuadraticBound assemble_bipartite_bound(const ZarCertificate& c, const QMatrix& q) {
  const ZarVerification v = verify_zar_certificate(c, q);
  if (!v.valid) throw std::invalid_argument("invalid zar certificate: " + v.reason);
  return bipartite_bound(v.certified_t, c.m);
}

QuadraticBound assemble_k7n_bound(const ZarCertificate& c) {
  if (c.m != 7) throw std::invalid_argument("assemble_k7n_bound: certificate is for m = " + std::to_string(c.m));
  return assemble_bipartite_bound(c, QMatrix(TypeTable(7)));
}

Rational odd_to_even(const Rational& nu_odd, int n_odd) {
  if (n_odd < 5 || n_odd % 2 == 0) {
    throw std::invalid_argument("odd_to_even: need odd n >= 5, got " + std::to_string(n_odd));
  }
  return Rational(ceil_of(Rational(n_odd + 1) * nu_odd / Rational(n_odd - 3)));
}

std::string to_string(BoundTarget t) {
  switch (t) {
    case BoundTarget::nu2_complete: return "nu2_complete";
    case BoundTarget::nu2_bipartite: return "nu2_bipartite";
    case BoundTarget::asymptotic_ratio: return "asymptotic_ratio";
  }
  return "unknown";
}

namespace {

BoundTarget target_from_string(const std::string& s) {
  for (auto t : {BoundTarget::nu2_complete, BoundTarget::nu2_bipartite, BoundTarget::asymptotic_ratio}) {
    if (to_string(t) == s) return t;
  }
  throw std::invalid_argument("unknown bound target '" + s + "'");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

const Rational& scalar(const BoundValue& v, const std::string& op) {
  if (const auto* r = std::get_if<Rational>(&v)) return *r;
  throw std::invalid_argument(op + ": expects a scalar input");
}

const QuadraticBound& quadratic(const BoundValue& v, const std::string& op) {
  if (const auto* q = std::get_if<QuadraticBound>(&v)) return *q;
  throw std::invalid_argument(op + ": expects a polynomial input");
}

Rational nu2_from_maxcut_file(const std::string& path, int n) {
  const nlohmann::json j = read_json_file(path);
  if (j.value("kind", std::string()) != "maxcut" || j.value("n", -1) != n) {
    throw std::invalid_argument(path + ": not a maxcut result for n = " + std::to_string(n));
  }
  if (j.at("proof_status").get<std::string>() != "exact") throw std::invalid_argument(path + ": maxcut not proven");
  const ChordGraph g(n);
  const auto bits = j.at("witness").get<std::string>();
  if (static_cast<int>(bits.size()) != g.num_chords()) throw std::invalid_argument(path + ": witness has wrong length");
  std::vector<std::uint8_t> side;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument(path + ": witness is not a bitstring");
    side.push_back(ch == '1');
  }
  const std::int64_t optimum = j.at("optimum").get<std::int64_t>();
  const std::int64_t upper = j.at("upper_bound").get<std::int64_t>();
  if (cut_value(SimpleGraph::from(g), side) != optimum || upper != optimum) {
    throw std::invalid_argument(path + ": witness does not attain the recorded optimum");
  }
  return Rational(binomial(n, 4) - upper);
}

Rational nu2_from_gw_file(const std::string& path, int n) {
  GwCertificate c;
  from_json(read_json_file(path), c);
  if (c.n != n) throw std::invalid_argument(path + ": certificate is for n = " + std::to_string(c.n));
  const GwVerification v = verify_gw_certificate(c);
  if (!v.valid) throw std::invalid_argument(path + ": " + v.reason);
  return Rational(v.implied_bound);
}

QuadraticBound bipartite_from_file(const std::string& path, int m) {
  ZarCertificate c;
  from_json(read_json_file(path), c);
  if (c.m != m) throw std::invalid_argument(path + ": certificate is for m = " + std::to_string(c.m));
  return assemble_bipartite_bound(c, QMatrix(TypeTable(m)));
}

bool has_file(const ProvenanceStep& s) { return !s.file.empty() && std::filesystem::exists(s.file); }

}  // namespace

ReplayResult replay(const std::vector<ProvenanceStep>& chain) {
  if (chain.empty()) throw std::invalid_argument("replay: empty provenance chain");
  ReplayResult out;
  out.verified = true;
  auto unbacked = [&](const ProvenanceStep& s) {
    out.verified = false;
    out.notes.push_back(s.op + ": " + (s.file.empty() ? std::string("no backing file") : "missing file " + s.file));
  };
  for (std::size_t idx = 0; idx < chain.size(); ++idx) {
    const auto& step = chain[idx];
    const auto& p = step.params;
    const bool source = step.op == "nu2_exact" || step.op == "gw_certificate" || step.op == "zar_certificate";
    if (source != (idx == 0)) {
      throw std::invalid_argument("replay: step " + std::to_string(idx) + " ('" + step.op +
                                  "') is out of place; a chain is one certificate step followed by arithmetic steps");
    }
    if (step.op == "nu2_exact") {
      const int n = p.at("n").get<int>();
      if (has_file(step)) {
        out.value = nu2_from_maxcut_file(step.file, n);
      } else {
        unbacked(step);
        out.value = Rational(binomial(n, 4) - p.at("maxcut_upper_bound").get<std::int64_t>());
      }
    } else if (step.op == "gw_certificate") {
      const int n = p.at("n").get<int>();
      if (has_file(step)) {
        out.value = nu2_from_gw_file(step.file, n);
      } else {
        unbacked(step);
        out.value = parse_rational(p.at("implied_bound").get<std::string>());
      }
    } else if (step.op == "zar_certificate") {
      const int m = p.at("m").get<int>();
      if (has_file(step)) {
        out.value = bipartite_from_file(step.file, m);
      } else {
        unbacked(step);
        out.value = bipartite_bound(parse_rational(p.at("certified_t").get<std::string>()), m);
      }
    } else if (step.op == "odd_to_even") {
      out.value = odd_to_even(scalar(out.value, step.op), p.at("n").get<int>());
    } else if (step.op == "claim_a") {
      out.value = claim_a_ratio(p.at("m").get<std::int64_t>(), scalar(out.value, step.op));
    } else if (step.op == "k7_to_k8") {
      out.value = k7_to_k8_bipartite(quadratic(out.value, step.op));
    } else {
      throw std::invalid_argument("replay: unknown op '" + step.op + "'");
    }
  }
  return out;
}

BoundReport report_nu2_exact(const Nu2Result& r, const std::string& file) {
  BoundReport rep;
  rep.target = BoundTarget::nu2_complete;
  rep.size = r.n;
  rep.chain.push_back({"nu2_exact", {{"n", r.n}, {"maxcut_upper_bound", r.maxcut.upper_bound}}, file});
  const ReplayResult rr = replay(rep.chain);
  rep.value = rr.value;
  rep.verified = rr.verified;
  return rep;
}

BoundReport report_gw(const GwCertificate& c, const std::string& file) {
  const GwVerification v = verify_gw_certificate(c);
  if (!v.valid) throw std::invalid_argument("report_gw: invalid certificate: " + v.reason);
  BoundReport rep;
  rep.target = BoundTarget::nu2_complete;
  rep.size = c.n;
  rep.chain.push_back({"gw_certificate", {{"n", c.n}, {"implied_bound", std::to_string(v.implied_bound)}}, file});
  const ReplayResult rr = replay(rep.chain);
  rep.value = rr.value;
  rep.verified = rr.verified;
  return rep;
}

BoundReport report_bipartite(const ZarCertificate& c, const std::string& file) {
  const ZarVerification v = verify_zar_certificate(c, QMatrix(TypeTable(c.m)));
  if (!v.valid) throw std::invalid_argument("report_bipartite: invalid certificate: " + v.reason);
  BoundReport rep;
  rep.target = BoundTarget::nu2_bipartite;
  rep.size = c.m;
  rep.chain.push_back({"zar_certificate", {{"m", c.m}, {"certified_t", to_string(v.certified_t)}}, file});
  const ReplayResult rr = replay(rep.chain);
  rep.value = rr.value;
  rep.verified = rr.verified;
  return rep;
}

namespace {

BoundReport extend(const BoundReport& prev, BoundTarget target, int size, ProvenanceStep step) {
  BoundReport rep = prev;
  rep.target = target;
  rep.size = size;
  rep.chain.push_back(std::move(step));
  const ReplayResult rr = replay(rep.chain);
  rep.value = rr.value;
  rep.verified = rr.verified;
  return rep;
}

}  // namespace

BoundReport report_odd_to_even(const BoundReport& odd) {
  if (odd.target != BoundTarget::nu2_complete) throw std::invalid_argument("report_odd_to_even: needs a nu2_complete report");
  return extend(odd, BoundTarget::nu2_complete, odd.size + 1, {"odd_to_even", {{"n", odd.size}}, {}});
}

BoundReport report_claim_a(const BoundReport& complete) {
  if (complete.target != BoundTarget::nu2_complete) throw std::invalid_argument("report_claim_a: needs a nu2_complete report");
  return extend(complete, BoundTarget::asymptotic_ratio, complete.size, {"claim_a", {{"m", complete.size}}, {}});
}

BoundReport report_k7_to_k8(const BoundReport& k7) {
  if (k7.target != BoundTarget::nu2_bipartite || k7.size != 7) {
    throw std::invalid_argument("report_k7_to_k8: needs a nu2_bipartite report for m = 7");
  }
  return extend(k7, BoundTarget::nu2_bipartite, 8, {"k7_to_k8", nlohmann::json::object(), {}});
}

void to_json(nlohmann::json& j, const BoundReport& r) {
  nlohmann::json chain = nlohmann::json::array();
  for (const auto& s : r.chain) {
    nlohmann::json step{{"op", s.op}, {"params", s.params}};
    if (!s.file.empty()) step["file"] = s.file;
    chain.push_back(std::move(step));
  }
  nlohmann::json value;
  if (const auto* q = std::get_if<QuadraticBound>(&r.value)) {
    value = {{"n2", to_string(q->a)}, {"n1", to_string(q->b)}, {"text", q->to_string()}};
  } else {
    const auto& v = std::get<Rational>(r.value);
    value = {{"exact", to_string(v)}, {"approx", to_double(v)}};
  }
  j = nlohmann::json{{"schema", 1},      {"kind", "bound_report"}, {"target", to_string(r.target)},
                     {"size", r.size},   {"value", value},         {"status", r.verified ? "verified" : "unverified"},
                     {"provenance", chain}};
}

void from_json(const nlohmann::json& j, BoundReport& r) {
  try {
    if (j.at("kind").get<std::string>() != "bound_report") throw std::invalid_argument("not a bound report");
    r.target = target_from_string(j.at("target").get<std::string>());
    r.size = j.at("size").get<int>();
    const auto& v = j.at("value");
    if (v.contains("n2")) {
      r.value = QuadraticBound{parse_rational(v.at("n2").get<std::string>()), parse_rational(v.at("n1").get<std::string>())};
    } else {
      r.value = parse_rational(v.at("exact").get<std::string>());
    }
    r.verified = j.at("status").get<std::string>() == "verified";
    r.chain.clear();
    for (const auto& s : j.at("provenance")) {
      r.chain.push_back({s.at("op").get<std::string>(), s.at("params"), s.value("file", std::string())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed bound report: ") + e.what());
  }
}

Table1Row table1_row(const Nu2Result& r) {
  Table1Row row;
  row.n = r.n;
  row.maxcut = r.maxcut.optimum;
  row.c4 = binomial(r.n, 4);
  row.nu2 = r.value;
  row.z = zeta_complete(r.n);
  row.nodes = r.maxcut.nodes_explored;
  row.seconds = r.maxcut.seconds;
  row.proof_status = r.proof_status;
  return row;
}

void to_json(nlohmann::json& j, const Table1Row& r) {
  j = nlohmann::json{{"n", r.n},         {"maxcut", r.maxcut}, {"c4", r.c4},
                     {"nu2", r.nu2},     {"z", r.z},           {"nodes", r.nodes},
                     {"seconds", r.seconds}, {"proof_status", std::string(to_string(r.proof_status))}};
}

void write_table_text(std::ostream& os, const std::vector<Table1Row>& rows) {
  os << std::setw(4) << "n" << std::setw(10) << "maxcut" << std::setw(10) << "C(n,4)" << std::setw(8) << "nu2"
     << std::setw(8) << "Z(n)" << std::setw(10) << "nodes" << std::setw(10) << "seconds" << "  status\n";
  for (const auto& r : rows) {
    os << std::setw(4) << r.n << std::setw(10) << r.maxcut << std::setw(10) << r.c4 << std::setw(8) << r.nu2
       << std::setw(8) << r.z << std::setw(10) << r.nodes << std::setw(10) << std::fixed << std::setprecision(2)
       << r.seconds << "  " << to_string(r.proof_status) << '\n';
  }
}

RatioRow ratio_row(const GwCertificate& c) {
  const GwVerification v = verify_gw_certificate(c);
  if (!v.valid) throw std::invalid_argument("ratio_row: invalid certificate: " + v.reason);
  RatioRow row;
  row.n = c.n;
  row.bound = v.implied_bound;
  row.z = zeta_complete(c.n);
  row.ratio = to_double(Rational(row.bound, row.z));
  return row;
}

}  // namespace booknum
