// booknum: command-line front end for the crossing-number pipeline.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "booknum/bipartite_types.hpp"
#include "booknum/bounds.hpp"
#include "booknum/circle_graph.hpp"
#include "booknum/gw_bound.hpp"
#include "booknum/maxcut.hpp"
#include "booknum/pagecount.hpp"

namespace {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kBadInput = 2, kInvalidCertificate = 3, kTimeout = 4 };

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<int> n;
  int m = 0;
  double budget_seconds = 0.0;  // 0 = unlimited
  std::int64_t budget_nodes = -1;
  double accuracy = 1e-7;
  std::string out;
  std::string format = "json";
  int threads = 1;
  std::uint64_t seed = 1;
  std::string path;

  [[nodiscard]] json echo() const {
    json j{{"command", command}, {"accuracy", accuracy}, {"format", format}, {"threads", threads}, {"seed", seed}};
    if (!n.empty()) j["n"] = n;
    if (m > 0) j["m"] = m;
    if (budget_seconds > 0) j["budget_seconds"] = budget_seconds;
    if (budget_nodes >= 0) j["budget_nodes"] = budget_nodes;
    if (!out.empty()) j["out"] = out;
    if (!path.empty()) j["path"] = path;
    return j;
  }

  [[nodiscard]] int single_n() const {
    if (n.size() != 1) throw BadInput(command + ": pass exactly one --n");
    return n.front();
  }
};

// Writes to --out when given, otherwise stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw BadInput("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const RunConfig& cfg, json doc) {
  doc["schema"] = 1;
  doc["config"] = cfg.echo();
  Sink sink(cfg.out);
  sink.stream() << doc.dump(2) << '\n';
}

booknum::MaxcutOptions maxcut_options(const RunConfig& cfg) {
  booknum::MaxcutOptions o;
  o.seed = cfg.seed;
  o.max_nodes = cfg.budget_nodes;
  if (cfg.budget_seconds > 0) o.max_seconds = cfg.budget_seconds;
  o.heartbeat = [](const booknum::MaxcutProgress& p) {
    std::cerr << "[maxcut] nodes " << p.nodes << "  incumbent " << p.incumbent << "  open " << p.open_nodes << "  "
              << std::fixed << std::setprecision(1) << p.seconds << "s\n";
  };
  return o;
}

booknum::ZarOptions zar_options(const RunConfig& cfg) {
  booknum::ZarOptions o;
  o.accuracy = cfg.accuracy;
  o.progress = [](int it, double obj, double gap) {
    std::cerr << "[zar] iter " << it << "  t " << std::setprecision(10) << obj << "  gap " << std::setprecision(3) << gap
              << '\n';
  };
  return o;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw BadInput(path + ": " + e.what());
  }
}

int cmd_table1(const RunConfig& cfg) {
  std::vector<int> ns = cfg.n;
  if (ns.empty()) ns = {5, 6, 7, 8, 9, 10, 11};
  std::vector<booknum::Table1Row> rows;
  bool timed_out = false;
  for (int n : ns) {
    if (n < 3) throw BadInput("table1: n must be at least 3");
    std::cerr << "[table1] n = " << n << '\n';
    const auto r = booknum::nu2_complete_exact(n, maxcut_options(cfg));
    rows.push_back(booknum::table1_row(r));
    timed_out = timed_out || r.proof_status != booknum::ProofStatus::exact;
  }
  if (cfg.format == "text") {
    Sink sink(cfg.out);
    booknum::write_table_text(sink.stream(), rows);
  } else if (cfg.format == "csv") {
    Sink sink(cfg.out);
    sink.stream() << "n,maxcut,c4,nu2,z,nodes,seconds,proof_status\n";
    for (const auto& r : rows) {
      sink.stream() << r.n << ',' << r.maxcut << ',' << r.c4 << ',' << r.nu2 << ',' << r.z << ',' << r.nodes << ','
                    << r.seconds << ',' << booknum::to_string(r.proof_status) << '\n';
    }
  } else {
    emit_json(cfg, {{"kind", "table1"}, {"rows", rows}});
  }
  return timed_out ? kTimeout : kOk;
}

int cmd_maxcut(const RunConfig& cfg) {
  const int n = cfg.single_n();
  if (cfg.format == "edgelist") {
    const booknum::ChordGraph g(n);
    Sink sink(cfg.out);
    g.write_edge_list(sink.stream());
    return kOk;
  }
  if (n < 4) throw BadInput("maxcut: n must be at least 4");
  const auto r = booknum::nu2_complete_exact(n, maxcut_options(cfg));
  json doc = r.maxcut;
  doc["kind"] = "maxcut";
  doc["n"] = n;
  doc["c4"] = booknum::binomial(n, 4);
  doc["nu2_upper"] = r.value;
  doc["nu2_lower"] = r.lower_bound;
  doc["z"] = booknum::zeta_complete(n);
  emit_json(cfg, doc);
  return r.proof_status == booknum::ProofStatus::exact ? kOk : kTimeout;
}

int cmd_gw(const RunConfig& cfg) {
  const int n = cfg.single_n();
  if (n < 5 || n % 2 == 0) throw BadInput("gw: n must be odd and at least 5");
  const auto cert = booknum::gw_reduced_solve(booknum::build_reduced(n), cfg.accuracy);
  const auto v = booknum::verify_gw_certificate(cert);
  if (!v.valid) {
    std::cerr << "gw: produced certificate failed verification: " << v.reason << '\n';
    return kInvalidCertificate;
  }
  json doc = cert;
  doc["implied_bound"] = v.implied_bound;
  doc["z"] = booknum::zeta_complete(n);
  emit_json(cfg, doc);
  std::cerr << "nu2(K_" << n << ") >= " << v.implied_bound << '\n';
  return kOk;
}

int cmd_zar(const RunConfig& cfg) {
  if (cfg.m < 2) throw BadInput("zar: pass --m >= 2");
  const booknum::QMatrix q{booknum::TypeTable(cfg.m)};
  if (cfg.m % 2 == 0 && q.size() > booknum::kZarDenseMaxTypes) {
    throw BadInput("zar: even m = " + std::to_string(cfg.m) + " needs the dense path, which is limited to " +
                   std::to_string(booknum::kZarDenseMaxTypes) + " types");
  }
  const auto cert = booknum::sdp_bound_solve(q, zar_options(cfg));
  const auto v = booknum::verify_zar_certificate(cert, q);
  if (!v.valid) {
    std::cerr << "zar: produced certificate failed verification: " << v.reason << '\n';
    return kInvalidCertificate;
  }
  const auto bound = booknum::bipartite_bound(v.certified_t, cfg.m);
  json doc = cert;
  doc["certified_t"] = booknum::to_string(v.certified_t);
  doc["bound"] = {{"n2", booknum::to_string(bound.a)}, {"n1", booknum::to_string(bound.b)}, {"text", bound.to_string()}};
  emit_json(cfg, doc);
  std::cerr << "nu2(K_{" << cfg.m << ",n}) >= " << bound.to_string() << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.path.empty()) throw BadInput("verify: pass a certificate path");
  const json j = read_json_file(cfg.path);
  const std::string kind = j.value("kind", std::string());
  json doc{{"kind", "verification"}, {"certificate_kind", kind}};
  bool valid = false;
  try {
    if (kind == "gw") {
      booknum::GwCertificate c;
      from_json(j, c);
      const auto v = booknum::verify_gw_certificate(c);
      valid = v.valid;
      doc["n"] = c.n;
      doc["margin"] = v.margin;
      doc["tolerance"] = v.tolerance;
      if (valid) doc["implied_bound"] = v.implied_bound;
      if (!valid) doc["reason"] = v.reason;
    } else if (kind == "zar") {
      booknum::ZarCertificate c;
      from_json(j, c);
      if (c.m < 2 || c.m > booknum::kMaxTypeM) throw std::invalid_argument("m out of range");
      const auto v = booknum::verify_zar_certificate(c, booknum::QMatrix(booknum::TypeTable(c.m)));
      valid = v.valid;
      doc["m"] = c.m;
      doc["margin"] = v.margin;
      doc["tolerance"] = v.tolerance;
      if (valid) {
        const auto bound = booknum::bipartite_bound(v.certified_t, c.m);
        doc["certified_t"] = booknum::to_string(v.certified_t);
        doc["bound"] = bound.to_string();
      } else {
        doc["reason"] = v.reason;
      }
    } else if (kind == "bound_report") {
      booknum::BoundReport r;
      from_json(j, r);
      const auto rr = booknum::replay(r.chain);
      valid = rr.value == r.value;
      doc["status"] = rr.verified ? "verified" : "unverified";
      doc["notes"] = rr.notes;
      if (!valid) doc["reason"] = "replayed value differs from the recorded value";
    } else {
      throw std::invalid_argument("unknown certificate kind '" + kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    valid = false;
    doc["reason"] = e.what();
  }
  doc["valid"] = valid;
  emit_json(cfg, doc);
  return valid ? kOk : kInvalidCertificate;
}

int cmd_ratio_curve(const RunConfig& cfg) {
  std::vector<int> ns = cfg.n;
  if (ns.empty()) ns = {5, 7, 9, 11, 13, 15, 17, 19, 21, 25, 31, 41, 51};
  Sink sink(cfg.out);
  if (cfg.format == "csv") sink.stream() << "n,bound,z,ratio\n";
  json rows = json::array();
  for (int n : ns) {
    if (n < 5 || n % 2 == 0) throw BadInput("ratio-curve: every n must be odd and at least 5");
    std::cerr << "[ratio-curve] n = " << n << '\n';
    const auto row = booknum::ratio_row(booknum::gw_reduced_solve(booknum::build_reduced(n), cfg.accuracy));
    if (cfg.format == "csv") {
      sink.stream() << row.n << ',' << row.bound << ',' << row.z << ',' << std::setprecision(10) << row.ratio << '\n';
    } else {
      rows.push_back({{"n", row.n}, {"bound", row.bound}, {"z", row.z}, {"ratio", row.ratio}});
    }
  }
  if (cfg.format != "csv") {
    json doc{{"kind", "ratio_curve"}, {"rows", rows}, {"schema", 1}, {"config", cfg.echo()}};
    sink.stream() << doc.dump(2) << '\n';
  }
  return kOk;
}

int cmd_draw(const RunConfig& cfg) {
  const int n = cfg.single_n();
  json doc{{"kind", "drawing"}};
  booknum::TwoPageDrawing d;
  if (cfg.m > 0) {
    if (n < 1) throw BadInput("draw: n must be positive");
    d = booknum::zarankiewicz_drawing(cfg.m, n);
    doc["graph"] = "K_{" + std::to_string(cfg.m) + "," + std::to_string(n) + "}";
    doc["z"] = booknum::zeta_bipartite(cfg.m, n);
  } else {
    if (n < 3) throw BadInput("draw: n must be at least 3");
    const auto r = booknum::nu2_complete_exact(n, maxcut_options(cfg));
    d = r.witness;
    doc["graph"] = "K_" + std::to_string(n);
    doc["z"] = booknum::zeta_complete(n);
    doc["proof_status"] = booknum::to_string(r.proof_status);
  }
  doc["crossings"] = booknum::count_crossings(d);
  doc["drawing"] = d;
  emit_json(cfg, doc);
  return kOk;
}

int cmd_qmatrix(const RunConfig& cfg) {
  if (cfg.m < 2) throw BadInput("qmatrix: pass --m >= 2");
  const booknum::TypeTable tt(cfg.m);
  const booknum::QMatrix q(tt);
  Sink sink(cfg.out);
  q.write_csv(sink.stream());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-page crossing number bounds: exact max-cut, GW certificates, bipartite SDP bounds"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, const std::vector<std::string>& formats) {
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker cap (all solvers currently run on one thread)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for randomized heuristics")->capture_default_str();
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget-seconds", cfg.budget_seconds, "Wall-clock budget per solve (0 = none)");
    sub->add_option("--budget-nodes", cfg.budget_nodes, "Branch-and-bound node budget (-1 = none)");
  };
  auto add_accuracy = [&](CLI::App* sub) {
    sub->add_option("--accuracy", cfg.accuracy, "SDP accuracy target")->check(CLI::PositiveNumber)->capture_default_str();
  };

  auto* table1 = app.add_subcommand("table1", "Exact nu_2(K_n) rows: n, maxcut, C(n,4), nu_2, Z(n)");
  table1->add_option("--n", cfg.n, "Values of n (comma separated, default 5..11)")->delimiter(',');
  add_budget(table1);
  add_common(table1, {"json", "text", "csv"});

  auto* maxcut = app.add_subcommand("maxcut", "Exact maximum cut of G_n (--format edgelist writes G_n instead)");
  maxcut->add_option("--n", cfg.n, "n")->required();
  add_budget(maxcut);
  add_common(maxcut, {"json", "edgelist"});

  auto* gw = app.add_subcommand("gw", "GW certificate for odd n and the implied bound on nu_2(K_n)");
  gw->add_option("--n", cfg.n, "Odd n >= 5")->required();
  add_accuracy(gw);
  add_common(gw, {"json"});

  auto* zar = app.add_subcommand("zar", "SDP certificate for Types(m) and the bound on nu_2(K_{m,n})");
  zar->add_option("--m", cfg.m, "m")->required();
  add_accuracy(zar);
  add_common(zar, {"json"});

  auto* verify = app.add_subcommand("verify", "Re-verify a gw, zar or bound_report file");
  verify->add_option("path", cfg.path, "Certificate file")->required();
  add_common(verify, {"json"});

  auto* ratio = app.add_subcommand("ratio-curve", "(C(n,4) - GW bound) / Z(n) for odd n");
  ratio->add_option("--n", cfg.n, "Odd values of n (comma separated)")->delimiter(',');
  add_accuracy(ratio);
  add_common(ratio, {"json", "csv"});

  auto* draw = app.add_subcommand("draw", "Drawing JSON: optimal K_n, or the Zarankiewicz drawing of K_{m,n}");
  draw->add_option("--n", cfg.n, "n")->required();
  draw->add_option("--m", cfg.m, "m (bipartite drawing when given)");
  add_budget(draw);
  add_common(draw, {"json"});

  auto* qmatrix = app.add_subcommand("qmatrix", "Forced-crossing matrix Q over Types(m) as CSV");
  qmatrix->add_option("--m", cfg.m, "m")->required();
  add_common(qmatrix, {"csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  const std::vector<std::pair<CLI::App*, int (*)(const RunConfig&)>> commands{
      {table1, cmd_table1}, {maxcut, cmd_maxcut},     {gw, cmd_gw},     {zar, cmd_zar},
      {verify, cmd_verify}, {ratio, cmd_ratio_curve}, {draw, cmd_draw}, {qmatrix, cmd_qmatrix}};
  try {
    for (const auto& [sub, fn] : commands) {
      if (sub->parsed()) {
        cfg.command = sub->get_name();
        return fn(cfg);
      }
    }
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
