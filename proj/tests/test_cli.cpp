#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "fdiff/cli.hpp"
#include "fdiff/delta.hpp"
#include "fdiff/dsl.hpp"

using namespace fdiff;

namespace {

const nlohmann::ordered_json* row_with(const CommandResult& r, const std::string& key, long value) {
  for (const auto& row : r.rows)
    if (row.contains(key) && row[key] == value) return &row;
  return nullptr;
}

}  // namespace

TEST_CASE("table of delta(X^3)") {
  Settings s;
  auto r = cmd_table("delta(X^3)", 4, s);
  REQUIRE(r.rows.size() == 5);
  // 27 - 8 = 19 = 1 + 3*2 + 3*4
  const auto* row = row_with(r, "k", 2);
  REQUIRE(row);
  CHECK((*row)["size"] == 19);
  CHECK((*row)["size"] == 1 + 3 * 2 + 3 * 4);
  // second difference of a cubic: 6k + 6
  CHECK((*row)["difference"] == 18);
  CHECK(r.params["closed_form"] == "3X^2 + 3X + 1");
  CHECK(exit_code(r) == 0);
}

TEST_CASE("verify chain-rule reproduces the two count polynomials") {
  Settings s;
  VerifyArgs a;
  a.suite = "chain-rule";
  a.f = "X^2";
  a.g = "X^2";
  auto r = cmd_verify(a, s);
  CHECK(exit_code(r) == 0);
  CHECK(r.params["source_polynomial"] == "4X^3 + 2X^2 + 2X + 1");
  CHECK(r.params["target_polynomial"] == "4X^3 + 6X^2 + 4X + 1");
  for (const auto& row : r.rows) {
    long k = row["k"].get<long>();
    CHECK(row["source"] == (2 * k * k + 1) * (2 * k + 1));
    CHECK(row["target"] == (k + 1) * (k + 1) * (k + 1) * (k + 1) - k * k * k * k);
  }
}

TEST_CASE("verify newton-roundtrip on the square") {
  Settings s;
  VerifyArgs a;
  a.suite = "newton-roundtrip";
  a.expr = "X^2";
  a.N = 4;
  auto r = cmd_verify(a, s);
  CHECK(exit_code(r) == 0);
  CHECK(r.params["species"] == "delta*(X^2) [0,1,2,0,0]");
}

TEST_CASE("verify suites") {
  Settings s;
  for (const auto& suite : {"taut", "product-rule", "confluence", "dirichlet"}) {
    VerifyArgs a;
    a.suite = suite;
    auto r = cmd_verify(a, s);
    INFO(suite);
    CHECK(exit_code(r) == 0);
    CHECK_FALSE(r.rows.empty());
  }
  VerifyArgs taut;
  taut.suite = "taut";
  CHECK(cmd_verify(taut, s).rows.size() >= 12);
  VerifyArgs three;
  three.suite = "product-rule";
  three.f = three.g = three.h = "X";
  auto r3 = cmd_verify(three, s);
  // (k+1)^3 - k^3 on both sides
  for (const auto& row : r3.rows) {
    long k = row["k"].get<long>();
    CHECK(row["delta_of_product"] == (k + 1) * (k + 1) * (k + 1) - k * k * k);
    CHECK(row["sum_over_proper_subsets"] == row["delta_of_product"]);
  }
  VerifyArgs bad;
  bad.suite = "nope";
  CHECK_THROWS_AS(cmd_verify(bad, s), UsageError);
}

TEST_CASE("delta command reports the closed form and its bijection") {
  Settings s;
  s.K = 3;
  auto r = cmd_delta("X^[3]", s);
  CHECK(exit_code(r) == 0);
  CHECK(r.params["class"] == "quotient-power");
  for (const auto& row : r.rows) CHECK(row["closed_form"] == row["delta"]);
  auto c = cmd_delta("X^2 o X^2", s);
  CHECK(exit_code(c) == 0);
  CHECK_FALSE(c.params.contains("closed_form"));
  CHECK_THROWS_AS(cmd_delta("X^2 o", s), ParseError);
}

TEST_CASE("newton command modes") {
  Settings s;
  NewtonArgs a;
  a.delta_star = "X^[2]";
  a.N = 3;
  auto r = cmd_newton(a, s);
  CHECK(exit_code(r) == 0);
  CHECK(r.rows.size() == 4);
  CHECK(r.rows[1]["size"] == 1);
  CHECK(r.rows[2]["size"] == 1);

  std::string path = "fdiff_cli_species.json";
  std::ofstream(path) << R"({"N": 2, "G": [0, 1, 2], "actions": {"2->1:0,0": [0, 0], "2->2:1,0": [1, 0]}})";
  NewtonArgs sum;
  sum.sum_file = path;
  sum.maxk = 3;
  auto rs = cmd_newton(sum, s);
  CHECK(exit_code(rs) == 0);
  // k + k(k-1): the free 2-point degree contributes ordered pairs of distinct points
  for (const auto& row : rs.rows) {
    long k = row["k"].get<long>();
    CHECK(row["size"] == k * k);
  }
  std::remove(path.c_str());

  NewtonArgs none;
  CHECK_THROWS_AS(cmd_newton(none, s), UsageError);
  NewtonArgs missing;
  missing.sum_file = "no-such-file.json";
  CHECK_THROWS_AS(cmd_newton(missing, s), UsageError);
}

TEST_CASE("JSON schema, determinism and the CSV mirror") {
  Settings s;
  auto a = to_json(cmd_table("X^[2] + P", 3, s), false).dump();
  auto b = to_json(cmd_table("X^[2] + P", 3, s), false).dump();
  CHECK(a == b);
  auto j = nlohmann::ordered_json::parse(a);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "params", "rows", "report"});
  CHECK(j["report"]["params"]["seed"] == std::to_string(kDefaultSeed));
  CHECK_FALSE(j["report"].contains("millis"));
  CHECK(to_json(cmd_table("X", 1, s), true)["report"].contains("millis"));

  auto r = cmd_table("X^2", 2, s);
  std::string csv = to_csv(r);
  CHECK(csv == "k,size,difference\n0,0,1\n1,1,3\n2,4,5\n");

  CommandResult failing;
  failing.report.check("something", false, "witness text");
  CHECK(exit_code(failing) == 1);
  CHECK(report_json(failing.report, false)["witnesses"].size() == 1);
}

TEST_CASE("chain command extras") {
  Settings s;
  ChainArgs a;
  a.f = "X^[2]";
  a.g = "X^2";
  a.h = "X";
  a.tangent = true;
  a.kmax = 3;
  auto r = cmd_chain(a, s);
  CHECK(exit_code(r) == 0);
  CHECK(r.report.children().size() == 5);
}
