#include <set>

#include "doctest.h"
#include "fdiff/classes.hpp"

using namespace fdiff;

namespace {

std::size_t count_at(const FunctorPtr& f, std::size_t k) { return f->eval(test_set(k)).size(); }

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Burnside: |X^n / G| at |X| = k is the average of k^{cycles(g)}
std::uint64_t burnside(const PermGroup& g, std::uint64_t k) {
  std::uint64_t total = 0;
  for (const auto& p : g.elements()) {
    std::vector<char> seen(p.size(), 0);
    std::uint64_t cycles = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = 1;
    }
    total += ipow(k, cycles);
  }
  return total / g.order();
}

// monotone maps of a lattice given by brute-force: count tuples X -> L whose join is top
std::uint64_t normalized_count(const Lattice& l, std::size_t k) {
  std::uint64_t c = 0;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::size_t j = l.bottom();
    for (auto i : idx) j = l.join(j, i);
    c += (j == l.top());
    std::size_t i = 0;
    while (i < k && ++idx[i] == l.size()) idx[i++] = 0;
    if (i == k) break;
  }
  return c;
}

}  // namespace

TEST_CASE("polynomial functors") {
  PolySpec spec{{3, 2, 2, 0}};
  auto p = poly_functor(spec);
  CHECK(describe(spec) == "X^3 + 2X^2 + 1");
  for (std::size_t k = 0; k <= 5; ++k) CHECK(count_at(p, k) == ipow(k, 3) + 2 * ipow(k, 2) + 1);
  CHECK(count_at(poly_functor({{4}}), 1) == 1);
  CHECK(check_taut(p).passed());
}

TEST_CASE("polynomial morphisms are taut iff every f_i is onto") {
  PolySpec x{{1}}, x2{{2}};
  FinSet one = FinSet::range(1), two = FinSet::range(2);
  // diagonal X -> X^2 from f : 2 -> 1
  auto diag = poly_morphism(x, x2, {0}, {FinFun(two, one, {0, 0})});
  CHECK(is_taut_poly_morphism({FinFun(two, one, {0, 0})}));
  CHECK(check_natural(diag).passed());
  CHECK(check_taut_transf(diag).passed());
  // projection X^2 -> X from f : 1 -> 2
  auto proj = poly_morphism(x2, x, {0}, {FinFun(one, two, {0})});
  CHECK_FALSE(is_taut_poly_morphism({FinFun(one, two, {0})}));
  CHECK_FALSE(check_taut_transf(proj).passed());
  auto id = poly_morphism(x2, x2, {0}, {FinFun::identity(two)});
  CHECK(check_taut_transf(id).passed());
  CHECK_THROWS(poly_morphism(x2, x, {0}, {FinFun(two, one, {0, 0})}));
}

TEST_CASE("divided and quotient powers") {
  auto d2 = quot_power_functor(divided_power(2));
  FinSet ab = test_set(2);
  CHECK(d2->eval(ab).size() == 3);
  CHECK(describe(divided_power(2)) == "X^[2]");
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t k = 0; k <= 5; ++k)
      CHECK(count_at(quot_power_functor(divided_power(n)), k) == binomial(k + n - (n || k ? 1 : 0), n));
  for (const auto& g : {PermGroup::cyclic(3), PermGroup::cyclic(4), PermGroup::trivial(2)}) {
    auto f = quot_power_functor({{{g.degree(), g}}});
    for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(f, k) == burnside(g, k));
    CHECK(check_taut(f).passed());
  }
  CHECK(check_taut(d2).passed());
}

TEST_CASE("X^n/S_n x X^m/S_m is X^{n+m}/(S_n x S_m)") {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 1}, {2, 2}}) {
    auto sn = PermGroup::symmetric(n), sm = PermGroup::symmetric(m);
    auto lhs = product({quot_power_functor(divided_power(n)), quot_power_functor(divided_power(m))});
    auto rhs = quot_power_functor({{{n + m, PermGroup::direct_product(sn, sm)}}});
    auto g = PermGroup::direct_product(sn, sm);
    Family fam = [g](const FinSet&, const Element& e) {
      std::vector<Element> t = e[0].inner().inner().children();
      for (const auto& c : e[1].inner().inner().children()) t.push_back(c);
      return sum_element(0, Element::cls(quot_canonical(t, g)));
    };
    CHECK(iso_witness(lhs, rhs, {}, fam).passed());
  }
}

TEST_CASE("analytic functors") {
  FinSet ab = test_set(2);
  CHECK(analytic_functor(species_power(2))->eval(ab).size() == 4);
  CHECK(analytic_functor(species_divided(2))->eval(ab).size() == 3);
  auto c3 = species_cosets(3, PermGroup::cyclic(3));
  auto a = analytic_functor(c3);
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(a, k) == burnside(PermGroup::cyclic(3), k));
  auto s = analytic_functor(species_sum(species_power(1), species_divided(2)));
  for (std::size_t k = 0; k <= 3; ++k) CHECK(count_at(s, k) == k + k * (k + 1) / 2);
  for (const auto& f : {analytic_functor(species_power(2)), a, s}) CHECK(check_taut(f).passed());
  CHECK(species_degree(c3) == 3);
}

TEST_CASE("filters, powerset and ultrafilters") {
  auto fm = filter_monad();
  auto pm = powerset_monad();
  FinSet two = test_set(2);
  CHECK(fm.functor->eval(two).size() == 4);
  CHECK(proper_filter_functor()->eval(two).size() == 3);
  CHECK(ultrafilter_functor()->eval(two).size() == 2);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(count_at(fm.functor, k) == ipow(2, k));

  // pushforward of a generator is the direct image, for every f : 2 -> 2
  for (const auto& f : all_functions(two, two))
    for (const auto& s : all_subsets(two)) {
      std::vector<Element> img;
      for (const auto& m : s) img.push_back(f(m));
      CHECK(fm.functor->apply(f, filter_element(Element::set(s.elems()))) == filter_element(Element::set(img)));
    }
  CHECK(fm.unit->at(two, two[1]) == filter_element(Element::set({two[1]})));

  for (const auto& f : {fm.functor, pm.functor, proper_filter_functor(), ultrafilter_functor()})
    CHECK(check_taut(f).passed());
  CHECK(monad_laws(fm).passed());
  CHECK(monad_laws(pm).passed());
  for (const auto& t : {fm.unit, fm.mult, pm.unit, pm.mult}) {
    CHECK(check_natural(t).passed());
    CHECK(check_taut_transf(t).passed());
  }
}

TEST_CASE("lattice basics and isomorphism") {
  auto c3 = Lattice::chain(3);
  CHECK(c3.is_chain());
  CHECK(c3.bottom() == 0);
  CHECK(c3.top() == 2);
  auto b2 = Lattice::boolean(2);
  CHECK(b2.size() == 4);
  CHECK_FALSE(b2.is_chain());
  CHECK(lattices_isomorphic(Lattice::product_of({Lattice::chain(2), Lattice::chain(3)}),
                            Lattice::product_of({Lattice::chain(3), Lattice::chain(2)})));
  CHECK_FALSE(lattices_isomorphic(b2, Lattice::chain(4)));
  CHECK_FALSE(lattices_isomorphic(Lattice::product_of({Lattice::chain(2), Lattice::chain(3)}), b2));
  CHECK(lattice_iso_unique_factorization(36).passed());

  // not a lattice: two maximal elements
  CHECK_THROWS(Lattice(FinSet::range(2), {{1, 0}, {0, 1}}, "antichain"));
  auto j = lattice_from_json(R"({"elems":["b","x","y","t"],"leq":[["b","x"],["b","y"],["x","t"],["y","t"]]})");
  CHECK(lattices_isomorphic(j, b2));
  CHECK_THROWS(lattice_from_json("{\"elems\":[1,2]"));
}

TEST_CASE("lattice exponentials") {
  auto two = Lattice::chain(2);
  for (std::size_t k = 0; k <= 5; ++k) CHECK(count_at(normalized_exponential(two), k) == ipow(2, k) - 1);
  CHECK(count_at(full_exponential(Lattice::chain(3)), 0) == 1);
  CHECK(count_at(normalized_exponential(Lattice::chain(3)), 0) == 0);
  CHECK(count_at(normalized_exponential(Lattice::chain(1)), 0) == 1);
  // n^X against 1^[X] + ... + n^[X]
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t k = 0; k <= 4; ++k) {
      std::uint64_t rhs = 0;
      for (std::size_t i = 1; i <= n; ++i) rhs += count_at(normalized_exponential(Lattice::chain(i)), k);
      CHECK(count_at(full_exponential(Lattice::chain(n)), k) == ipow(n, k));
      CHECK(rhs == ipow(n, k));
    }
  // L^X against the down-set decomposition
  auto b2 = Lattice::boolean(2);
  for (std::size_t k = 0; k <= 3; ++k) {
    std::uint64_t rhs = 0;
    for (std::size_t l = 0; l < b2.size(); ++l) rhs += normalized_count(b2.down_set(l), k);
    CHECK(count_at(full_exponential(b2), k) == rhs);
    CHECK(count_at(normalized_exponential(b2), k) == normalized_count(b2, k));
  }
  for (const auto& f : {normalized_exponential(b2), full_exponential(b2), normalized_exponential(Lattice::chain(3))})
    CHECK(check_taut(f).passed());
}

TEST_CASE("sup-maps, tautness and reconstruction") {
  std::vector<Lattice> small{Lattice::chain(1), Lattice::chain(2), Lattice::chain(3), Lattice::chain(4),
                             Lattice::boolean(2)};
  std::size_t maps = 0;
  for (const auto& l : small)
    for (const auto& m : small)
      for (const auto& phi : top_preserving_sup_maps(l, m)) {
        ++maps;
        auto t = lattice_map_transf(l, m, phi);
        auto r = reconstruct_phi(t, l, m);
        REQUIRE(r.phi.has_value());
        CHECK(*r.phi == phi);
        if (l.size() <= 3 && m.size() <= 3) CHECK(check_taut_transf(t).passed() == reflects_bottom(l, m, phi));
      }
  CHECK(maps > 0);
  auto c3 = Lattice::chain(3), c2 = Lattice::chain(2);
  CHECK(check_taut_transf(lattice_map_transf(c3, c3, {0, 1, 2})).passed());
  auto collapse = lattice_map_transf(c3, c2, {0, 0, 1});
  Report r = check_taut_transf(collapse);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.first_witness().empty());
  CHECK_THROWS(lattice_map_transf(c3, c2, {1, 0, 1}));
}

TEST_CASE("n_* lattices and sequential Dirichlet functors") {
  CHECK(n_star(1).size() == 1);
  CHECK(lattices_isomorphic(n_star(2), Lattice::chain(2)));
  CHECK(lattices_isomorphic(n_star(3), Lattice::chain(3)));
  CHECK(n_star(6).size() == 6);
  CHECK(lattices_isomorphic(n_star(6), Lattice::product_of({n_star(2), n_star(3)})));
  CHECK(n_star(5).size() == 4);
  CHECK_THROWS(n_star(0));
  CHECK(prime_factors(12) == std::vector<std::uint64_t>{2, 2, 3});
  CHECK(prime_pi(7) == 4);

  auto z = zeta_truncation(4);
  // 1 + 2^[X] + 3^[X] + (2x2)^[X]
  for (std::size_t k = 0; k <= 3; ++k)
    CHECK(count_at(z, k) == normalized_count(n_star(1), k) + normalized_count(n_star(2), k) +
                                normalized_count(n_star(3), k) + normalized_count(n_star(4), k));
  CHECK(check_taut(z).passed());

  for (std::uint64_t r : {2, 3})
    for (std::uint64_t s : {2, 3}) CHECK(star_product_check(r, s).passed());
  std::vector<FinSet> c{FinSet::range(1), FinSet::range(2)}, d{FinSet::range(1), FinSet(), FinSet::range(1)};
  CHECK(sequential_product_check(c, d).passed());
  CHECK(euler_check({2, 3}, 12).passed());
}

TEST_CASE("class specs realize and describe") {
  std::vector<ClassSpec> specs{PolySpec{{2, 0}}, divided_power(3), species_power(2),
                               DirichletSpec{{{FinSet::range(1), Lattice::chain(2), true}}}, MonadSpec{MonadKind::Filter}};
  std::vector<std::string> names{"polynomial", "quotient-power", "analytic", "dirichlet", "monad"};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    CHECK(class_name(specs[i]) == names[i]);
    auto f = realize(specs[i]);
    CHECK(f->name() == describe(specs[i]));
    CHECK(check_taut(f).passed());
  }
}
