#include "doctest.h"
#include "fdiff/delta.hpp"

using namespace fdiff;

namespace {

std::size_t count_at(const FunctorPtr& f, std::size_t k) { return f->eval(test_set(k)).size(); }

FunctorPtr certified(FunctorPtr f) {
  REQUIRE(check_taut(f).passed());
  return f;
}

FunctorPtr sq() { return certified(product({identity(), identity()})); }

// brute-force complement: elements of X^2 over k+1 points using the last point, computed without the library
std::size_t square_delta_oracle(std::size_t k) {
  std::size_t c = 0;
  for (std::size_t a = 0; a <= k; ++a)
    for (std::size_t b = 0; b <= k; ++b) c += (a == k || b == k);
  return c;
}

}  // namespace

TEST_CASE("operational delta on basic functors") {
  auto c = certified(constant(3));
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(delta(c), k) == 0);
  auto id = certified(identity());
  for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(delta(id), k) == 1);
  auto s = sq();
  for (std::size_t k = 0; k <= 4; ++k) {
    CHECK(count_at(delta(s), k) == 2 * k + 1);
    CHECK(count_at(delta(s), k) == square_delta_oracle(k));
  }
  CHECK(check_taut(delta(s)).passed());
  CHECK(check_functorial(delta(s)).passed());
  CHECK(delta(s)->certified());
}

TEST_CASE("delta refuses functors without a certificate") {
  auto raw = product({identity(), identity()});
  CHECK_THROWS_AS(delta(raw), NotTautError);
}

TEST_CASE("counting and coproduct laws") {
  std::vector<FunctorPtr> fs{certified(identity()), sq(), certified(constant(2)),
                             certified(quot_power_functor(divided_power(2))), certified(powerset_monad().functor),
                             certified(normalized_exponential(Lattice::chain(3)))};
  for (const auto& f : fs) {
    CHECK(counting_law(f, 5).passed());
    CHECK(coproduct_law(f, 3).passed());
  }
}

TEST_CASE("delta of transformations") {
  auto s = sq();
  auto id = certified(identity());
  auto idt = identity_transf(s);
  REQUIRE(check_taut_transf(idt).passed());
  auto didt = delta_transf(idt);
  for (std::size_t k = 0; k <= 3; ++k)
    for (const auto& e : delta(s)->eval(test_set(k))) CHECK(didt->at(test_set(k), e) == e);

  auto diag = make_transf(id, s, [](const FinSet&, const Element& e) { return Element::tuple({e, e}); }, "diag");
  REQUIRE(check_taut_transf(diag).passed());
  auto dd = delta_transf(diag);
  CHECK(check_natural(dd).passed());
  CHECK(check_taut_transf(dd).passed());
  // delta[Id] = 1 goes to the diagonal pair of fresh points
  CHECK(dd->at(test_set(2), Element::star()) == Element::tuple({Element::star(), Element::star()}));

  auto proj = make_transf(s, id, [](const FinSet&, const Element& e) { return e[0]; }, "proj");
  CHECK_FALSE(check_taut_transf(proj).passed());
  CHECK_THROWS_AS(delta_transf(proj), NotTautError);
}

TEST_CASE("iterated delta and D_n") {
  auto s = sq();
  CHECK(count_at(iterated(s, 2), 0) == 2);
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(iterated(s, 3), k) == 0);
  auto d0 = d_pointed(s, FinSet());
  for (std::size_t k = 0; k <= 3; ++k) CHECK(d0->eval(test_set(k)) == s->eval(test_set(k)));
  CHECK(d_n(s, 0)->eval(test_set(2)) == s->eval(test_set(2)));
  for (const auto& f : {s, certified(quot_power_functor(divided_power(3))), certified(powerset_monad().functor)}) {
    CHECK(iterated_vs_dn(f, 2, 3).passed());
  }
  CHECK(iterated_vs_dn(certified(poly_functor({{3}})), 3, 2).passed());
  CHECK(d_composition_check(s, 1, 1).passed());
  CHECK(d_composition_check(certified(poly_functor({{3}})), 1, 2).passed());
  CHECK(d_composition_check(certified(powerset_monad().functor), 2, 1).passed());
}

TEST_CASE("symbolic delta closed forms") {
  CHECK(describe(symbolic_delta(PolySpec{{3}}).spec) == "3X^2 + 3X + 1");
  CHECK(describe(symbolic_delta(divided_power(2)).spec) == "X + 1");
  CHECK(describe(symbolic_delta(divided_power(3)).spec) == "X^[2] + X + 1");

  // for the n-chain: (n-1) copies of n^[X] plus one each of 1^[X] .. (n-1)^[X]
  for (std::size_t n = 1; n <= 4; ++n) {
    auto sd = symbolic_delta(DirichletSpec{{{FinSet::range(1), Lattice::chain(n), true}}});
    const auto& terms = std::get<DirichletSpec>(sd.spec).terms;
    std::vector<std::pair<std::size_t, std::size_t>> got, want;
    for (const auto& t : terms) got.emplace_back(t.lattice.size(), t.coeff.size());
    for (std::size_t i = 1; i < n; ++i) want.emplace_back(i, 1);
    if (n > 1) want.emplace_back(n, n - 1);
    CHECK(got == want);
  }
  CHECK(std::holds_alternative<PolySpec>(symbolic_delta(MonadSpec{MonadKind::Ultrafilter}).spec));
}

TEST_CASE("symbolic delta matches the operational delta through explicit bijections") {
  std::vector<ClassSpec> specs{
      PolySpec{{3}},
      PolySpec{{2, 1, 1, 0}},
      divided_power(2),
      divided_power(3),
      QuotPowerSpec{{{3, PermGroup::cyclic(3)}}},
      QuotPowerSpec{{{4, PermGroup::direct_product(PermGroup::symmetric(2), PermGroup::symmetric(2))}}},
      species_power(2),
      species_divided(3),
      species_cosets(3, PermGroup::cyclic(3)),
      species_sum(species_power(1), species_divided(2)),
      DirichletSpec{{{FinSet::range(1), Lattice::chain(3), true}}},
      DirichletSpec{{{FinSet::range(2), Lattice::boolean(2), true}, {FinSet::range(1), Lattice::chain(2), false}}},
      MonadSpec{MonadKind::Filter},
      MonadSpec{MonadKind::ProperFilter},
      MonadSpec{MonadKind::Powerset},
      MonadSpec{MonadKind::Ultrafilter},
  };
  for (const auto& s : specs) {
    Report r = verify_symbolic_delta(s, 3);
    INFO(r.text());
    CHECK(r.passed());
  }
}

TEST_CASE("product rules") {
  auto id = certified(identity());
  CHECK(product_rule_check(id, id).passed());
  auto rhs = product_rule_rhs({id, id});
  for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(rhs, k) == 2 * k + 1);

  auto c = certified(constant(3));
  CHECK(product_rule_check(c, sq()).passed());
  // with a constant factor only the C x dG summand survives
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(product_rule_rhs({c, sq()}), k) == 3 * (2 * k + 1));

  Report three = finite_product_rule_check({id, id, id});
  CHECK(three.passed());
  for (std::size_t k = 0; k <= 4; ++k)
    CHECK(count_at(product_rule_rhs({id, id, id}), k) == (k + 1) * (k + 1) * (k + 1) - k * k * k);
  CHECK(finite_product_rule_check({id, certified(powerset_monad().functor), c, id}, 2).passed());
}
