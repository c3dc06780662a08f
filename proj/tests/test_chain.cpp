#include "doctest.h"
#include "fdiff/chain.hpp"

using namespace fdiff;

namespace {

FunctorPtr certified(FunctorPtr f) {
  REQUIRE(check_taut(f).passed());
  return f;
}

FunctorPtr sq() { return certified(product({identity(), identity()})); }
FunctorPtr id() { return certified(identity()); }
FunctorPtr div2() { return certified(quot_power_functor(divided_power(2))); }

std::string param(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.params())
    if (k == key) return v;
  return "";
}

}  // namespace

TEST_CASE("integer interpolation") {
  CHECK(interpolate({1, 15, 65, 175, 369}) == std::vector<std::int64_t>{4, 6, 4, 1});
  CHECK(interpolate({5, 5, 5}) == std::vector<std::int64_t>{5});
  CHECK(interpolate({0, 1, 4, 9, 16}) == std::vector<std::int64_t>{1, 0, 0});
  CHECK_THROWS(interpolate({0, 1, 3}));  // k(k+1)/2 has half-integer coefficients
  CHECK(poly_string({4, 2, 2, 1}) == "4X^3 + 2X^2 + 2X + 1");
  CHECK(poly_string({1, 0, -1}) == "X^2 - 1");
}

TEST_CASE("chain-rule comparison for the square after the square") {
  auto c = chain_rule_comparison(sq(), sq(), 4);
  for (std::uint64_t k = 0; k <= 4; ++k) {
    CHECK(c.lhs_counts[k] == (2 * k * k + 1) * (2 * k + 1));
    CHECK(c.rhs_counts[k] == (k + 1) * (k + 1) * (k + 1) * (k + 1) - k * k * k * k);
    if (k > 0) CHECK(c.lhs_counts[k] < c.rhs_counts[k]);
  }
  CHECK(c.lhs_coeffs == std::vector<std::int64_t>{4, 2, 2, 1});
  CHECK(c.rhs_coeffs == std::vector<std::int64_t>{4, 6, 4, 1});
  CHECK(c.report.passed());
}

TEST_CASE("gamma is natural, monic and taut over a grid") {
  std::vector<FunctorPtr> fs{sq(), div2(), certified(poly_functor({{1, 1, 0}}))};
  std::vector<FunctorPtr> gs{sq(), div2()};
  for (const auto& f : fs)
    for (const auto& g : gs) {
      Report r = gamma_check(gamma(f, g));
      INFO(r.text());
      CHECK(r.passed());
    }
  CHECK_THROWS_AS(gamma(product({identity(), identity()}), sq()), NotTautError);
}

TEST_CASE("gamma unit laws") {
  for (const auto& f : {id(), sq(), div2(), certified(powerset_monad().functor)}) {
    Report r = gamma_unit_checks(f, 2);
    INFO(r.text());
    CHECK(r.passed());
  }
  // G = Id: |delta[Id](FX) x delta F(X)| = |delta F(X)|
  auto w = gamma(sq(), id());
  for (std::size_t k = 0; k <= 3; ++k) CHECK(w.lhs->eval(test_set(k)).size() == 2 * k + 1);
}

TEST_CASE("gamma naturality") {
  auto s = sq();
  auto i = id();
  CHECK(gamma_naturality_check(identity_transf(i), identity_transf(s)).passed());
  auto diag = make_transf(i, s, [](const FinSet&, const Element& e) { return Element::tuple({e, e}); }, "diag");
  CHECK(gamma_naturality_check(diag, identity_transf(s)).passed());
  auto swap = make_transf(s, s, [](const FinSet&, const Element& e) { return Element::tuple({e[1], e[0]}); }, "swap");
  CHECK(gamma_naturality_check(identity_transf(div2()), swap).passed());
  CHECK(gamma_naturality_check(diag, swap).passed());
}

TEST_CASE("gamma associativity") {
  CHECK(gamma_associativity_check(id(), id(), id(), 2).passed());
  Report r = gamma_associativity_check(sq(), sq(), sq(), 1);
  INFO(r.text());
  CHECK(r.passed());
  CHECK(gamma_associativity_check(div2(), sq(), id(), 2).passed());
  CHECK(gamma_associativity_check(sq(), div2(), sq(), 2).passed());
}

TEST_CASE("the tangent functor on pairs") {
  TangentD d_id(id());
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 2; ++b) {
      SetPair p = d_id.eval({test_set(a), test_set(b)});
      CHECK(p.a == test_set(a));
      CHECK(p.b.size() == b);
    }
  TangentD dp(certified(powerset_monad().functor));
  for (std::size_t a = 0; a <= 3; ++a) {
    SetPair p = dp.eval({test_set(a), test_set(2)});
    CHECK(p.a.size() == (1u << a));
    CHECK(p.b.size() == 2 * (1u << a));
  }
  CHECK(tangent_monoidal_check(sq(), sq(), 2).passed());
  CHECK(tangent_monoidal_check(div2(), certified(powerset_monad().functor), 1).passed());
}

TEST_CASE("the monad on pairs") {
  Report p = d_monad_laws(powerset_monad(), 2);
  INFO(p.text());
  CHECK(p.passed());
  Report f = d_monad_laws(filter_monad(), 2);
  INFO(f.text());
  CHECK(f.passed());
}

TEST_CASE("splitting counts") {
  CHECK(diagonal_retractions(2, false).natural_retractions == 2);
  CHECK(diagonal_retractions(3, false).natural_retractions == 3);
  CHECK(diagonal_retractions(3, false).invariant == 0);
  auto p = diagonal_retractions(3, true);
  CHECK(p.patterns == 15);
  // one coordinate on the star-free part, a free choice per star pattern: 3 * 3^3 * 2^3
  CHECK(p.natural_retractions == 3 * 27 * 8);
  CHECK(p.invariant == 0);
  Report r = splitting_search(3);
  CHECK(param(r, "summand-wise splittings, any F") == "24");
}
