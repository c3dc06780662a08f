#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fdiff/delta.hpp"
#include "fdiff/dsl.hpp"

using namespace fdiff;

namespace {

Expr node(Expr::Kind k, std::uint64_t n = 0) {
  Expr e;
  e.kind = k;
  e.n = n;
  return e;
}
Expr bin(Expr::Kind k, Expr a, Expr b) {
  Expr e = node(k);
  e.args = {std::move(a), std::move(b)};
  return e;
}

std::size_t error_offset(const std::string& s) {
  try {
    parse_expr(s);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

std::string error_text(const std::string& s) {
  try {
    parse_expr(s);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

std::size_t count_at(const FunctorPtr& f, std::size_t k) { return f->eval(test_set(k)).size(); }

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// random well-formed trees over the file-free atoms
Expr random_expr(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  if (depth == 0 || pick(3) == 0) {
    switch (pick(11)) {
      case 0: return node(Expr::Kind::Const, pick(4));
      case 1: return node(Expr::Kind::Id);
      case 2: return node(Expr::Kind::Power, pick(5));
      case 3: return node(Expr::Kind::Divided, pick(5));
      case 4: {
        Expr e = node(Expr::Kind::Quot, 3);
        if (pick(2)) e.sym_degree = 1 + pick(3);
        else e.perms = {{1, 2, 0}};
        return e;
      }
      case 5: {
        Expr e = node(Expr::Kind::Lattice);
        e.lattice.kind = pick(2) ? LatticeExpr::Kind::Chain : LatticeExpr::Kind::Star;
        e.lattice.n = 1 + pick(6);
        if (pick(2)) {
          LatticeExpr p;
          p.kind = LatticeExpr::Kind::Product;
          LatticeExpr c;
          c.kind = LatticeExpr::Kind::Chain;
          c.n = 2;
          p.factors = {e.lattice, c};
          e.lattice = p;
        }
        e.normalized = pick(2);
        return e;
      }
      case 6: return node(Expr::Kind::Filter);
      case 7: return node(Expr::Kind::Powerset);
      case 8: return node(Expr::Kind::Ultrafilter);
      case 9: return node(Expr::Kind::Zeta, 1 + pick(6));
      default: return node(Expr::Kind::Id);
    }
  }
  switch (pick(5)) {
    case 0: return bin(Expr::Kind::Sum, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 1: return bin(Expr::Kind::Prod, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 2: return bin(Expr::Kind::Compose, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3: {
      Expr e = node(Expr::Kind::Delta);
      e.args = {random_expr(rng, depth - 1)};
      return e;
    }
    default: {
      Expr e = node(Expr::Kind::DeltaN, pick(3));
      e.args = {random_expr(rng, depth - 1)};
      return e;
    }
  }
}

std::string temp_file(const std::string& name, const std::string& body) {
  std::string path = "fdiff_test_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("parse shapes of the documented examples") {
  CHECK(parse_expr("delta(X^2 o X^2)") ==
        [] {
          Expr d = node(Expr::Kind::Delta);
          d.args = {bin(Expr::Kind::Compose, node(Expr::Kind::Power, 2), node(Expr::Kind::Power, 2))};
          return d;
        }());

  Expr q = node(Expr::Kind::Quot, 4);
  q.sym_degree = 4;
  CHECK(parse_expr("X^4/S4 + C{3}*X") ==
        bin(Expr::Kind::Sum, q, bin(Expr::Kind::Prod, node(Expr::Kind::Const, 3), node(Expr::Kind::Id))));

  Expr l = node(Expr::Kind::Lattice);
  l.lattice.kind = LatticeExpr::Kind::Chain;
  l.lattice.n = 3;
  CHECK(parse_expr("chain3^[X]") == l);
  l.normalized = false;
  CHECK(parse_expr("chain3 ^ X") == l);
}

TEST_CASE("precedence and associativity") {
  Expr x = node(Expr::Kind::Id);
  CHECK(parse_expr("X + X * X o X") ==
        bin(Expr::Kind::Sum, x, bin(Expr::Kind::Prod, x, bin(Expr::Kind::Compose, x, x))));
  CHECK(parse_expr("X o X * X + X") ==
        bin(Expr::Kind::Sum, bin(Expr::Kind::Prod, bin(Expr::Kind::Compose, x, x), x), x));
  CHECK(parse_expr("X + X + X") == bin(Expr::Kind::Sum, bin(Expr::Kind::Sum, x, x), x));
  CHECK(parse_expr("X + (X + X)") == bin(Expr::Kind::Sum, x, bin(Expr::Kind::Sum, x, x)));
  CHECK(parse_expr("XoX") == bin(Expr::Kind::Compose, x, x));
  CHECK(parse_expr("  X^2/S2oX ") == bin(Expr::Kind::Compose,
                                         [] {
                                           Expr q = node(Expr::Kind::Quot, 2);
                                           q.sym_degree = 2;
                                           return q;
                                         }(),
                                         x));
  CHECK(parse_expr("3") == node(Expr::Kind::Const, 3));
  CHECK(parse_expr("6_*^[X]").lattice.kind == LatticeExpr::Kind::Star);
  CHECK(parse_expr("chain2 x 3_* x chain2^[X]").lattice.kind == LatticeExpr::Kind::Product);
  CHECK(parse_expr("delta^2(X^3)") == [] {
    Expr d = node(Expr::Kind::DeltaN, 2);
    d.args = {node(Expr::Kind::Power, 3)};
    return d;
  }());
  Expr g = parse_expr("X^3/<[1,2,0], [1,0,2]>");
  CHECK(g.perms.size() == 2);
  CHECK(parse_expr("X^2/<>").perms.empty());
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK(error_offset("X^2 +") == 5);
  CHECK(error_offset("delta(X") == 7);
  CHECK(error_offset("foo") == 0);
  CHECK(error_text("foo").find("unknown identifier 'foo'") != std::string::npos);
  CHECK(error_offset("X + bar") == 4);
  CHECK(error_offset("X^3/<[0,0,1]>") == 5);
  CHECK(error_text("X^3/<[0,0,1]>").find("malformed permutation") != std::string::npos);
  CHECK(error_offset("X^3/<[0,1]>") == 5);
  CHECK(error_offset("X^2/S3") == 4);
  CHECK(error_offset("chain3") == 6);
  CHECK(error_offset("X^99") == 0);
  CHECK(error_offset("C{3") == 3);
  CHECK(error_offset("X X") == 2);
  CHECK(error_offset("") == 0);
  CHECK(error_offset("newton(\"abc") == 7);
}

TEST_CASE("print then parse is a fixed point") {
  for (const char* s : {"delta(X^2 o X^2)", "X^4/S4 + C{3}*X", "chain3^[X]", "(X + X) * X", "X * (X * X)",
                        "X o (X o X)", "delta^3(F + P) * beta", "zeta(6) + 6_*^X", "chain2 x chain3^[X]",
                        "X^3/<[1,2,0],[1,0,2]> o X^[2]", "newton(\"g.json\") + species(\"s.json\")",
                        "lattice(\"l.json\")^[X]"}) {
    INFO(s);
    Expr e = parse_expr(s);
    std::string p = print_expr(e);
    CHECK(parse_expr(p) == e);
    CHECK(print_expr(parse_expr(p)) == p);
  }
  std::mt19937_64 rng(kDefaultSeed);
  for (int i = 0; i < 500; ++i) {
    Expr e = random_expr(rng, 4);
    std::string p = print_expr(e);
    INFO(p);
    CHECK(parse_expr(p) == e);
  }
}

TEST_CASE("compiled expressions count as expected") {
  auto d3 = compile("delta(X^3)");
  for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(d3.functor, k) == ipow(k + 1, 3) - ipow(k, 3));
  CHECK(count_at(d3.functor, 2) == 19);
  REQUIRE(d3.spec.has_value());
  CHECK(coefficients(std::get<PolySpec>(*d3.spec)) == std::vector<std::uint64_t>{1, 3, 3});

  auto s = compile("X^4/S4 + C{3}*X");
  for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(s.functor, k) == binom(k + 3, 4) + 3 * k);
  REQUIRE(s.spec.has_value());
  CHECK(std::holds_alternative<QuotPowerSpec>(*s.spec));
  for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(realize(*s.spec), k) == count_at(s.functor, k));

  auto c = compile("chain3^[X]");
  CHECK(count_at(c.functor, 0) == 0);
  for (std::size_t k = 1; k <= 4; ++k) CHECK(count_at(c.functor, k) == ipow(3, k) - ipow(2, k));
  auto full = compile("chain3^X");
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(full.functor, k) == ipow(3, k));

  // X^2 with the swap: unordered pairs with repetition
  auto sq = compile("X^2/<[1,0]>");
  for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(sq.functor, k) == binom(k + 1, 2));
  // S2 acting on the first two of three coordinates
  auto part = compile("X^3/S2");
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(part.functor, k) == binom(k + 1, 2) * k);

  auto comp = compile("delta(X^2 o X^2)");
  CHECK_FALSE(comp.spec.has_value());
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(comp.functor, k) == ipow(k + 1, 4) - ipow(k, 4));

  auto dn = compile("delta^2(X^2)");
  CHECK(count_at(dn.functor, 0) == 2);
  CHECK(count_at(dn.functor, 3) == 2);
  CHECK(count_at(compile("delta^3(X^2)").functor, 2) == 0);

  auto dir = compile("2*chain3^[X] + 1");
  REQUIRE(dir.spec.has_value());
  CHECK(std::holds_alternative<DirichletSpec>(*dir.spec));
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(realize(*dir.spec), k) == count_at(dir.functor, k));

  auto prodlat = compile("chain2^[X] * chain3^[X]");
  REQUIRE(prodlat.spec.has_value());
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(realize(*prodlat.spec), k) == count_at(prodlat.functor, k));

  CHECK(compile("X o X^[2]").spec.has_value());
  CHECK(std::holds_alternative<MonadSpec>(*compile("delta(P)").spec));
  // 1 + (4 - 1) + (9 - 4) + pairs in the 2 x 2 lattice joining to top
  CHECK(count_at(compile("zeta(4)").functor, 2) == 1 + 3 + 5 + 9);
}

TEST_CASE("files in expressions") {
  std::string sp = temp_file("species.json", R"({"terms": [{"n": 2, "generators": [[1, 0]]}, {"n": 1}]})");
  auto s = compile("species(\"" + sp + "\")");
  REQUIRE(s.spec.has_value());
  for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(s.functor, k) == binom(k + 1, 2) + k);

  std::string g = temp_file("soft.json", R"({"N": 1, "G": [0, 1], "actions": {}})");
  auto n = compile("newton(\"" + g + "\") * X");
  CHECK_FALSE(n.spec.has_value());
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(n.functor, k) == k * k);

  std::string l = temp_file("lattice.json", R"({"elems": ["b", "x", "y", "t"], "leq": [["b","x"],["b","y"],["x","t"],["y","t"]]})");
  auto lat = compile("lattice(\"" + l + "\")^[X]");
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(lat.functor, k) == count_at(compile("chain2 x chain2^[X]").functor, k));

  CHECK_THROWS_AS(compile("species(\"does-not-exist.json\")"), std::invalid_argument);
  for (const auto& p : {sp, g, l}) std::remove(p.c_str());
}
