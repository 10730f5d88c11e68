#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "booknum/bounds.hpp"

using namespace booknum;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("booknum_test_" + name);
}

void write_json(const std::filesystem::path& p, const nlohmann::json& j) {
  std::ofstream out(p);
  out << j.dump();
}

}  // namespace

TEST_CASE("claim_a_ratio examples") {
  const Rational r = claim_a_ratio(899, Rational(9381181976LL));
  CHECK(r >= Rational(9253, 10000));
  CHECK(r <= Rational(9254, 10000));
  CHECK(claim_a_ratio(24, Rational(3630)) == Rational(232320, 255024));
  CHECK(claim_a_ratio(5, Rational(1)) == Rational(64, 120));
  CHECK_THROWS_AS((void)claim_a_ratio(3, Rational(1)), std::invalid_argument);
}

TEST_CASE("claim_a_ratio is monotone and at most 1 below Z(m)") {
  for (std::int64_t m = 4; m <= 1000; ++m) {
    const Rational at_z = claim_a_ratio(m, Rational(zeta_complete(m)));
    REQUIRE(at_z <= 1);
    REQUIRE(claim_a_ratio(m, Rational(zeta_complete(m) + 1)) > at_z);
  }
}

TEST_CASE("n = 899 implied-bound arithmetic") {
  const Rational lhs = Rational(binomial(899, 4)) - parse_rational("1.76537474e10");
  CHECK(lhs >= Rational(9381181976LL));
}

TEST_CASE("bipartite polynomials") {
  const QuadraticBound k7 = bipartite_bound(Rational(9, 2), 7);
  CHECK(k7 == QuadraticBound{Rational(9, 4), Rational(-21, 2)});
  CHECK(k7_to_k8_bipartite(k7) == QuadraticBound{Rational(3), Rational(-14)});
  CHECK(k7_to_k8_bipartite(QuadraticBound{}) == QuadraticBound{});
  const auto k8 = k7_to_k8_bipartite(k7);
  CHECK(k8.at(100) == 28600);
  CHECK(k8.at(100) <= zeta_bipartite(8, 100));
  CHECK(bipartite_bound(Rational(0), 7) == QuadraticBound{Rational(0), Rational(-21, 2)});
  const auto k3 = bipartite_bound(Rational(1, 2), 3);
  CHECK(k3 == QuadraticBound{Rational(1, 4), Rational(-3, 2)});
  CHECK(k3.at(10) == 10);
  CHECK(k3.at(10) <= zeta_bipartite(3, 10));
  CHECK(k8.to_string() == "(3)n^2 - (14)n");
}

TEST_CASE("odd to even in exact arithmetic") {
  CHECK(odd_to_even(Rational(1), 5) == 3);
  CHECK(odd_to_even(Rational(100), 11) == 150);
  CHECK(odd_to_even(Rational(7, 2), 7) == 7);
  CHECK_THROWS_AS((void)odd_to_even(Rational(1), 4), std::invalid_argument);
}

TEST_CASE("assemble from certificates") {
  const QMatrix q(TypeTable(3));
  const auto c = sdp_bound_solve(q);
  const auto b = assemble_bipartite_bound(c, q);
  CHECK(b.b == Rational(-3, 2));
  CHECK(to_double(b.a) == doctest::Approx(0.25).epsilon(1e-5));
  auto bad = c;
  bad.t += 1.0;
  CHECK_THROWS_AS((void)assemble_bipartite_bound(bad, q), std::invalid_argument);
  CHECK_THROWS_AS((void)assemble_k7n_bound(c), std::invalid_argument);
}

TEST_CASE("reports without backing files are unverified but replay exactly") {
  const auto r7 = nu2_complete_exact(7);
  const auto rep = report_nu2_exact(r7);
  CHECK_FALSE(rep.verified);
  CHECK(std::get<Rational>(rep.value) == 9);
  const auto even = report_odd_to_even(rep);
  CHECK(even.size == 8);
  CHECK(std::get<Rational>(even.value) == zeta_complete(8));
  const auto ratio = report_claim_a(rep);
  CHECK(std::get<Rational>(ratio.value) == Rational(64 * 9, 7 * 6 * 5 * 4));
  const auto rr = replay(ratio.chain);
  CHECK(rr.value == ratio.value);
  CHECK_FALSE(rr.verified);
  CHECK(rr.notes.size() == 1);
}

TEST_CASE("file-backed reports verify and detect tampering") {
  const auto c = gw_reduced_solve(build_reduced(9));
  const auto path = temp_file("gw9.json");
  write_json(path, nlohmann::json(c));
  const auto rep = report_gw(c, path.string());
  CHECK(rep.verified);
  CHECK(std::get<Rational>(rep.value) == verify_gw_certificate(c).implied_bound);

  const nlohmann::json j = rep;
  CHECK(j.at("status") == "verified");
  const auto back = j.get<BoundReport>();
  CHECK(back.value == rep.value);
  CHECK(replay(back.chain).verified);

  auto tampered = nlohmann::json(c);
  tampered["y"][0] = tampered["y"][0].get<double>() - 0.1;
  write_json(path, tampered);
  CHECK_THROWS_AS((void)replay(back.chain), std::invalid_argument);
  std::filesystem::remove(path);
  CHECK_FALSE(replay(back.chain).verified);
}

TEST_CASE("maxcut-backed report") {
  const auto r = nu2_complete_exact(9);
  nlohmann::json j = r.maxcut;
  j["kind"] = "maxcut";
  j["n"] = 9;
  const auto path = temp_file("maxcut9.json");
  write_json(path, j);
  const auto rep = report_nu2_exact(r, path.string());
  CHECK(rep.verified);
  CHECK(std::get<Rational>(rep.value) == 36);
  j["witness"] = std::string(j["witness"].get<std::string>().size(), '0');
  write_json(path, j);
  CHECK_THROWS_AS((void)replay(rep.chain), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST_CASE("bipartite report chain to K_{8,n}") {
  const QMatrix q(TypeTable(3));
  const auto c = sdp_bound_solve(q);
  const auto rep = report_bipartite(c);
  CHECK(rep.target == BoundTarget::nu2_bipartite);
  CHECK_THROWS_AS((void)report_k7_to_k8(rep), std::invalid_argument);
  CHECK_THROWS_AS((void)report_claim_a(rep), std::invalid_argument);
  const nlohmann::json j = rep;
  CHECK(j.at("value").contains("n2"));
  CHECK(j.get<BoundReport>().value == rep.value);

  BoundReport k7;
  k7.target = BoundTarget::nu2_bipartite;
  k7.size = 7;
  k7.chain.push_back({"zar_certificate", {{"m", 7}, {"certified_t", "9/2"}}, {}});
  const auto k8 = report_k7_to_k8(k7);
  CHECK(std::get<QuadraticBound>(k8.value) == QuadraticBound{Rational(3), Rational(-14)});
  CHECK_FALSE(k8.verified);
}

TEST_CASE("replay rejects unknown steps") {
  CHECK_THROWS_AS((void)replay({}), std::invalid_argument);
  CHECK_THROWS_AS((void)replay({{"teleport", nlohmann::json::object(), {}}}), std::invalid_argument);
  CHECK_THROWS_AS((void)replay({{"claim_a", {{"m", 5}}, {}}}), std::invalid_argument);
  const ProvenanceStep src{"gw_certificate", {{"n", 5}, {"implied_bound", "1"}}, {}};
  CHECK_THROWS_AS((void)replay({src, src}), std::invalid_argument);
}

TEST_CASE("table rows") {
  const auto row = table1_row(nu2_complete_exact(5));
  CHECK(row.maxcut == 4);
  CHECK(row.c4 == 5);
  CHECK(row.nu2 == 1);
  CHECK(row.z == 1);
  std::ostringstream os;
  write_table_text(os, {row});
  CHECK(os.str().find("C(n,4)") != std::string::npos);
  const nlohmann::json j = row;
  CHECK(j.at("nu2") == 1);
}

TEST_CASE("ratio rows") {
  const auto row = ratio_row(gw_reduced_solve(build_reduced(11)));
  CHECK(row.z == 100);
  CHECK(row.bound <= 100);
  CHECK(row.ratio == doctest::Approx(static_cast<double>(row.bound) / 100.0));
}
