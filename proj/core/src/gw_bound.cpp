#include "booknum/gw_bound.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "booknum/rational.hpp"
#include "booknum/sdp.hpp"

namespace booknum {

namespace {

Eigen::MatrixXd laplacian(const SimpleGraph& g) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const auto& [a, b] : g.edges) {
    l(a, a) += 1.0;
    l(b, b) += 1.0;
    l(a, b) -= 1.0;
    l(b, a) -= 1.0;
  }
  return l;
}

double relative_gap_for(double accuracy, double scale) {
  return std::max(1e-13, accuracy / (1.0 + 2.0 * scale));
}

}  // namespace

GwFullResult gw_full(const SimpleGraph& g, double accuracy) {
  if (g.n > kGwFullMaxVertices) {
    throw std::invalid_argument("gw_full: " + std::to_string(g.n) + " vertices exceeds the dense limit of " +
                                std::to_string(kGwFullMaxVertices));
  }
  GwFullResult r;
  if (g.n == 0 || g.edges.empty()) {
    r.w = Eigen::VectorXd::Zero(g.n);
    r.converged = true;
    return r;
  }
  const Eigen::MatrixXd l = laplacian(g);
  sdp::Problem p;
  const int blk = p.add_block(sdp::BlockKind::psd, g.n);
  p.c[static_cast<std::size_t>(blk)] = -0.25 * l;
  for (int i = 0; i < g.n; ++i) p.add_constraint({{blk, i, i, 1.0}}, 1.0);
  sdp::Options opt;
  opt.gap_tol = relative_gap_for(accuracy, static_cast<double>(g.edges.size()));
  opt.feas_tol = 1e-10;
  const auto sol = sdp::solve(p, opt);
  r.converged = sol.status == sdp::Status::optimal;

  r.w = -sol.y;
  Eigen::MatrixXd s = Eigen::MatrixXd(r.w.asDiagonal()) - 0.25 * l;
  const PsdReport rep = psd_report(s);
  const double shift = std::max(0.0, -rep.min_eigenvalue) + rep.tolerance;
  r.w.array() += shift;
  s.diagonal().array() += shift;
  r.margin = min_symmetric_eigenvalue(s);
  r.value = r.w.sum();
  return r;
}

GwFullResult gw_full(const ChordGraph& g, double accuracy) { return gw_full(SimpleGraph::from(g), accuracy); }

ReducedGwProblem build_reduced(int n) {
  if (n < 5 || n % 2 == 0) {
    throw std::invalid_argument("build_reduced: need odd n >= 5, got " + std::to_string(n));
  }
  ReducedGwProblem p;
  p.n = n;
  p.d = n / 2;
  const int k = p.d - 1;
  for (int i = 2; i <= p.d; ++i) p.val.push_back(chord_valency_odd_form(i, n));
  for (int m = 0; m <= p.d; ++m) {
    Eigen::MatrixXcd upper = Eigen::MatrixXcd::Zero(k, k);
    for (int i = 2; i <= p.d; ++i) {
      for (int j = i; j <= p.d; ++j) upper(i - 2, j - 2) = 0.25 * circulant_block_eigs(i, j, n, m);
    }
    p.lambda.push_back(HermitianMat::from_upper(upper));
  }
  return p;
}

HermitianMat reduced_block(const ReducedGwProblem& p, const std::vector<double>& y, int m) {
  if (y.size() != p.val.size()) throw std::invalid_argument("reduced_block: y has wrong length");
  Eigen::MatrixXcd b = p.lambda.at(static_cast<std::size_t>(m)).entries();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    b(ii, ii) += y[i] - p.val[i] / 4.0;
  }
  return HermitianMat::from_upper(b);
}

namespace {

struct Margin {
  double value;
  double tolerance;
};

Margin certificate_margin(const ReducedGwProblem& p, const std::vector<double>& y) {
  Margin out{std::numeric_limits<double>::infinity(), 0.0};
  for (int m = 0; m <= p.d; ++m) {
    const PsdReport rep = psd_report(reduced_block(p, y, m));
    out.value = std::min(out.value, rep.min_eigenvalue);
    out.tolerance = std::max(out.tolerance, rep.tolerance);
  }
  return out;
}

GwCertificate finish(const ReducedGwProblem& p, std::vector<double> y, bool converged) {
  Margin raw = certificate_margin(p, y);
  if (raw.value < 0.0 || raw.value < raw.tolerance) {
    const double shift = std::max(0.0, -raw.value) + raw.tolerance;
    for (auto& v : y) v += shift;
    raw = certificate_margin(p, y);
  }
  GwCertificate c;
  c.n = p.n;
  c.margin = raw.value;
  c.tolerance = raw.tolerance;
  c.converged = converged;
  double sum = 0.0;
  for (double v : y) sum += v;
  c.bound = p.n * sum;
  c.y = std::move(y);
  return c;
}

}  // namespace

GwCertificate gw_reduced_solve(const ReducedGwProblem& p, double accuracy) {
  const int k = p.d - 1;
  sdp::Problem prob;
  // One realified block per frequency; variable y_i enters as +E_ii.
  for (int m = 0; m <= p.d; ++m) {
    const int blk = prob.add_block(sdp::BlockKind::psd, 2 * k);
    Eigen::MatrixXcd c = p.lambda[static_cast<std::size_t>(m)].entries();
    for (int i = 0; i < k; ++i) c(i, i) -= p.val[static_cast<std::size_t>(i)] / 4.0;
    prob.c[static_cast<std::size_t>(blk)] = realify(c);
  }
  for (int i = 0; i < k; ++i) {
    std::vector<sdp::Entry> entries;
    for (int m = 0; m <= p.d; ++m) {
      entries.push_back({m, i, i, -1.0});
      entries.push_back({m, i + k, i + k, -1.0});
    }
    prob.add_constraint(std::move(entries), -static_cast<double>(p.n));
  }
  sdp::Options opt;
  opt.gap_tol = relative_gap_for(accuracy, static_cast<double>(binomial(p.n, 4)));
  opt.feas_tol = 1e-10;
  const auto sol = sdp::solve(prob, opt);
  std::vector<double> y(sol.y.data(), sol.y.data() + sol.y.size());
  return finish(p, std::move(y), sol.status == sdp::Status::optimal);
}

GwCertificate gw_trivial_certificate(const ReducedGwProblem& p) {
  double worst = 0.0;
  for (const auto& lam : p.lambda) {
    const auto ev = eigenvalues(lam);
    worst = std::max(worst, -ev.front());
  }
  std::vector<double> y;
  for (double v : p.val) y.push_back(v / 4.0 + worst);
  return finish(p, std::move(y), false);
}

GwVerification verify_gw_certificate(const GwCertificate& c) {
  GwVerification v;
  if (c.n < 5 || c.n % 2 == 0) {
    v.reason = "n must be odd and at least 5";
    return v;
  }
  const ReducedGwProblem p = build_reduced(c.n);
  if (c.y.size() != p.val.size()) {
    v.reason = "y has " + std::to_string(c.y.size()) + " entries, expected " + std::to_string(p.val.size());
    return v;
  }
  for (double x : c.y) {
    if (!std::isfinite(x)) {
      v.reason = "y contains a non-finite value";
      return v;
    }
  }
  const Margin mg = certificate_margin(p, c.y);
  v.margin = mg.value;
  v.tolerance = mg.tolerance;

  Rational sum = 0;
  for (double x : c.y) sum += exact_rational(x);
  const Rational gw_side = Rational(c.n) * sum;
  const Rational slack = exact_rational(std::max(0.0, -mg.value)) + exact_rational(mg.tolerance);
  const Rational implied = Rational(binomial(c.n, 4)) - gw_side - Rational(c.n) * Rational(p.d - 1) * slack;
  v.implied_bound = ceil_of(implied).convert_to<std::int64_t>();

  if (mg.value < -mg.tolerance) {
    std::ostringstream msg;
    msg << "block minimum eigenvalue " << std::scientific << std::setprecision(3) << mg.value << " below -" << mg.tolerance;
    v.reason = msg.str();
    return v;
  }
  const Rational claimed = exact_rational(c.bound);
  const Rational allowance = exact_rational(1e-9 * (1.0 + std::abs(c.bound)));
  if (claimed + allowance < gw_side) {
    v.reason = "claimed bound is smaller than n * sum(y)";
    return v;
  }
  v.valid = true;
  return v;
}

void to_json(nlohmann::json& j, const GwCertificate& c) {
  j = nlohmann::json{{"schema", 1},       {"kind", "gw"},          {"n", c.n},
                     {"y", c.y},          {"claimed_bound", c.bound}, {"tolerance", c.tolerance},
                     {"margin", c.margin}, {"converged", c.converged}};
}

void from_json(const nlohmann::json& j, GwCertificate& c) {
  try {
    if (j.at("kind").get<std::string>() != "gw") throw std::invalid_argument("certificate kind is not \"gw\"");
    c.n = j.at("n").get<int>();
    c.y = j.at("y").get<std::vector<double>>();
    c.bound = j.at("claimed_bound").get<double>();
    c.tolerance = j.at("tolerance").get<double>();
    c.margin = j.value("margin", 0.0);
    c.converged = j.value("converged", false);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed gw certificate: ") + e.what());
  }
}

}  // namespace booknum
