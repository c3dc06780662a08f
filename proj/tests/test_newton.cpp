#include <map>
#include <numeric>

#include "doctest.h"
#include "fdiff/newton.hpp"

using namespace fdiff;

namespace {

FunctorPtr certified(FunctorPtr f) {
  REQUIRE(check_taut(f).passed());
  return f;
}

// G(1) = 1 point, G(2) = 2 points swapped freely, 2 ->> 1 collapses
SoftSpecies square_species() {
  return SoftSpecies(
      2, {FinSet(), FinSet::range(1), FinSet::range(2)},
      [](const Surjection& s, const Element& a) {
        if (s.size() == 2 && surj_target(s) == 1) return Element::atom(0);
        if (s == Surjection{1, 0}) return Element::atom(1 - a.atom_value());
        return a;
      },
      "sq");
}

std::vector<std::size_t> sizes(const SoftSpecies& g) {
  std::vector<std::size_t> v;
  for (std::size_t n = 0; n <= g.degree_bound(); ++n) v.push_back(g.at(n).size());
  return v;
}

// classes of triples (n, a, f : n -> X) under (n, a, g o s) ~ (m, G(s) a, g), by union-find
std::size_t orbit_count(const SoftSpecies& g, std::size_t k) {
  std::map<std::tuple<std::size_t, Element, std::vector<std::uint32_t>>, std::size_t> id;
  std::vector<std::tuple<std::size_t, Element, std::vector<std::uint32_t>>> items;
  for (std::size_t n = 0; n <= g.degree_bound(); ++n)
    for (const auto& a : g.at(n)) {
      if (k == 0 && n > 0) continue;  // no functions into the empty set
      std::vector<std::uint32_t> f(n, 0);
      while (true) {
        id.emplace(std::make_tuple(n, a, f), items.size());
        items.emplace_back(n, a, f);
        std::size_t i = 0;
        while (i < n && ++f[i] == k) f[i++] = 0;
        if (i == n || k == 0) break;
      }
    }
  std::vector<std::size_t> parent(items.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto [m, a, gm] = items[i];
    for (std::size_t n = 0; n <= m; ++n)
      for (const auto& s : surjections(m, n)) {
        // need gm = h o s for some h : n -> X
        std::vector<std::uint32_t> h(n, 0);
        bool ok = true;
        std::vector<char> set(n, 0);
        for (std::size_t j = 0; j < m; ++j) {
          if (set[s[j]] && h[s[j]] != gm[j]) ok = false;
          h[s[j]] = gm[j];
          set[s[j]] = 1;
        }
        if (!ok) continue;
        parent[find(i)] = find(id.at(std::make_tuple(n, g.act(s, a), h)));
      }
  }
  std::size_t c = 0;
  for (std::size_t i = 0; i < items.size(); ++i) c += find(i) == i;
  return c;
}

}  // namespace

TEST_CASE("surjections") {
  for (std::size_t m = 0; m <= 4; ++m)
    for (std::size_t n = 0; n <= 4; ++n)
      CHECK(surjections(m, n).size() == (m == 0 && n == 0 ? 1 : factorial(n) * stirling2(m, n)));
  CHECK(surj_compose({0, 0}, {1, 0, 1}) == Surjection{0, 0, 0});
  CHECK(surj_str({0, 1, 0}) == "3->2:0,1,0");
}

TEST_CASE("soft species construction checks functoriality") {
  auto g = square_species();
  CHECK(sizes(g) == std::vector<std::size_t>{0, 1, 2});
  // swap fixing a point while 2 ->> 1 is fine, but a G(2) element mapped outside G(1) is rejected
  CHECK_THROWS_AS(SoftSpecies(2, {FinSet(), FinSet(), FinSet::range(1)},
                              [](const Surjection&, const Element& a) { return a; }),
                  std::invalid_argument);
  // composition failure: the degeneracy is not swap-invariant
  std::map<Surjection, FinFun> gens;
  FinSet one = FinSet::range(2), two = FinSet::range(2);
  gens.emplace(Surjection{1, 0}, FinFun(two, two, {1, 0}));
  gens.emplace(Surjection{0, 0}, FinFun(two, one, {0, 1}));
  CHECK_THROWS_AS(SoftSpecies::generated(2, {FinSet(), one, two}, gens), std::invalid_argument);
  // missing generators leave actions undetermined
  CHECK_THROWS_AS(SoftSpecies::generated(2, {FinSet(), FinSet::range(1), two}, {}), std::invalid_argument);
}

TEST_CASE("Newton sums") {
  SoftSpecies id(1, {FinSet(), FinSet::range(1)}, [](const Surjection&, const Element& a) { return a; });
  auto idt = newton_sum(id);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(idt->eval(test_set(k)).size() == k);
  auto g = square_species();
  auto gt = newton_sum(g);
  for (std::size_t k = 0; k <= 4; ++k) {
    CHECK(gt->eval(test_set(k)).size() == k * k);
    CHECK(orbit_count(g, k) == k * k);
  }
  CHECK(check_taut(gt).passed());
  CHECK(check_functorial(gt).passed());
  // raising the truncation leaves values alone
  auto g4 = newton_sum(g.truncate(4));
  for (std::size_t k = 0; k <= 4; ++k) CHECK(g4->eval(test_set(k)) == gt->eval(test_set(k)));
  for (std::uint64_t seed = 10; seed < 14; ++seed) {
    auto r = random_soft_species(seed, 3, 3);
    auto rt = newton_sum(r);
    for (std::size_t k = 0; k <= 3; ++k) {
      std::size_t formula = 0;
      for (std::size_t n = 0; n <= 3; ++n) formula += binomial(k, n) * r.at(n).size();
      CHECK(rt->eval(test_set(k)).size() == formula);
      CHECK(orbit_count(r, k) == formula);
    }
  }
}

TEST_CASE("maps of soft species") {
  auto g = square_species();
  auto same = soft_map(g, g, {FinFun::identity(g.at(0)), FinFun::identity(g.at(1)), FinFun::identity(g.at(2))});
  auto t = newton_sum_transf(same);
  for (std::size_t k = 0; k <= 3; ++k)
    for (const auto& e : t->src()->eval(test_set(k))) CHECK(t->at(test_set(k), e) == e);
  CHECK(check_taut_transf(t).passed());

  // collapse of G(2) onto a single point
  SoftSpecies h(2, {FinSet(), FinSet::range(1), FinSet::range(1)}, [](const Surjection&, const Element&) {
    return Element::atom(0);
  });
  auto collapse = soft_map(g, h, {FinFun::identity(FinSet()), FinFun::identity(FinSet::range(1)),
                                  FinFun(FinSet::range(2), FinSet::range(1), {0, 0})});
  CHECK(check_taut_transf(newton_sum_transf(collapse)).passed());

  // degreewise inclusion
  SoftSpecies sub(2, {FinSet(), FinSet::range(1), FinSet()}, [](const Surjection&, const Element& a) { return a; });
  auto inc = soft_map(sub, g, {FinFun::identity(FinSet()), FinFun::identity(FinSet::range(1)),
                               FinFun(FinSet(), FinSet::range(2), {})});
  auto it = newton_sum_transf(inc);
  CHECK(check_taut_transf(it).passed());
  for (std::size_t k = 0; k <= 3; ++k) CHECK(it->component(test_set(k)).injective());

  CHECK_THROWS(soft_map(g, h, {FinFun::identity(FinSet()), FinFun::identity(FinSet::range(1)),
                               FinFun(FinSet::range(2), FinSet::range(1), {0, 0}),
                               FinFun::identity(FinSet())}));
}

TEST_CASE("iterated differences at zero") {
  auto sq = certified(product({identity(), identity()}));
  auto d = delta_star(sq, 3);
  CHECK(sizes(d) == std::vector<std::size_t>{0, 1, 2, 0});
  for (const auto& a : d.at(2)) CHECK(d.act({1, 0}, a) != a);
  CHECK(sizes(delta_star(certified(constant(3)), 2)) == std::vector<std::size_t>{3, 0, 0});
  auto div = delta_star(certified(quot_power_functor(divided_power(2))), 3);
  CHECK(sizes(div) == std::vector<std::size_t>{0, 1, 1, 0});
  CHECK(sizes(delta_star(certified(powerset_monad().functor), 3)) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK_THROWS_AS(delta_star(product({identity(), identity()}), 2), NotTautError);
}

TEST_CASE("softening") {
  CHECK(sizes(soften(species_power(2), 2)) == std::vector<std::size_t>{0, 1, 2});
  CHECK(sizes(soften(species_divided(2), 2)) == std::vector<std::size_t>{0, 1, 1});
  CHECK(sizes(soften(SpeciesSpec{{trivial_action(0, 3)}}, 2)) == std::vector<std::size_t>{3, 0, 0});
  // X^3: surjections 3 ->> n up to S_3, times the regular action: 1, 6/... = Stirling numbers times n!
  CHECK(sizes(soften(species_power(3), 3)) == std::vector<std::size_t>{0, 1, 6, 6});
  for (const auto& s : {species_power(2), species_divided(3), species_cosets(3, PermGroup::cyclic(3)),
                        species_sum(species_power(1), species_divided(2))}) {
    Report r = soften_check(s, 4);
    INFO(r.text());
    CHECK(r.passed());
  }
}

TEST_CASE("Newton summation: unit and counit isomorphisms") {
  CHECK(unit_iso_check(square_species()).passed());
  SoftSpecies zero(2, {FinSet::range(2), FinSet(), FinSet()}, [](const Surjection&, const Element& a) { return a; });
  CHECK(unit_iso_check(zero).passed());
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto g = random_soft_species(seed, 3, 4);
    Report r = unit_iso_check(g);
    INFO(r.text());
    CHECK(r.passed());
  }
  for (const auto& f : {certified(product({identity(), identity()})),
                        certified(product({identity(), identity(), identity()})),
                        certified(quot_power_functor(divided_power(2))), certified(poly_functor({{1, 1, 0, 0, 0}})),
                        certified(quot_power_functor(QuotPowerSpec{{{2, PermGroup::symmetric(2)}}}))}) {
    Report r = counit_iso_check(f, 4, 4);
    INFO(r.text());
    CHECK(r.passed());
  }
}

TEST_CASE("truncation comparison") {
  Report r = truncation_comparison(certified(powerset_monad().functor), 2, 4);
  CHECK(r.passed());
  bool under = false;
  for (const auto& n : r.notes()) under = under || n.find("under-counts from k = 3") != std::string::npos;
  CHECK(under);
}

TEST_CASE("factorization biconditional") {
  auto instances = adjunction_instances();
  CHECK(instances.size() >= 10);
  std::size_t failures = 0;
  for (const auto& in : instances) {
    Report r = adjunction_factorization_check(in.g, in.f, in.u);
    INFO(in.name << "\n" << r.text());
    CHECK(r.passed());
    std::string lands;
    for (const auto& [k, v] : r.params())
      if (k == "lands in delta*") lands = v;
    CHECK(lands == (in.lands ? "yes" : "no"));
    failures += !in.lands;
  }
  CHECK(failures >= 2);
}

TEST_CASE("species files") {
  auto g = soft_species_from_json(R"({"N": 2, "G": [0, 1, 2], "actions": {"2->1:0,0": [0, 0], "2->2:1,0": [1, 0]}})");
  CHECK(sizes(g) == std::vector<std::size_t>{0, 1, 2});
  for (std::size_t k = 0; k <= 3; ++k) CHECK(newton_sum(g)->eval(test_set(k)).size() == k * k);
  CHECK_THROWS_AS(soft_species_from_json(R"({"N": 1, "G": [0, 1], "actions": {"2->1": [0]}})"), std::invalid_argument);
  CHECK_THROWS_AS(soft_species_from_json(R"({"N": 2, "G": [0, 1, 2], "actions": {"2->1:0,0": [0, 0]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(soft_species_from_json("{"), std::invalid_argument);
}
