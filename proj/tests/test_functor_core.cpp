#include "doctest.h"
#include "fdiff/functor.hpp"
#include "fdiff/taut.hpp"

using namespace fdiff;

namespace {

// local powerset, written independently of the library's class module
FunctorPtr local_powerset() {
  return make_functor(
      "Pset",
      [](const FinSet& x) {
        std::vector<Element> v;
        for (const auto& s : all_subsets(x)) v.push_back(Element::set(s.elems()));
        return FinSet(v);
      },
      [](const FinFun& f, const Element& s) {
        std::vector<Element> v;
        for (const auto& m : s.members()) v.push_back(f(m));
        return Element::set(v);
      });
}

// (Z/3)^X with sum push-forward: a finite stand-in for the free abelian group functor
FunctorPtr z3_sums() {
  return make_functor(
      "Z3sum",
      [](const FinSet& x) {
        std::vector<Element> out;
        std::vector<std::uint64_t> d(x.size(), 0);
        while (true) {
          std::vector<Element> v;
          for (auto c : d) v.push_back(Element::atom(c));
          out.push_back(Element::tuple(v));
          std::size_t i = 0;
          while (i < d.size() && ++d[i] == 3) d[i++] = 0;
          if (i == d.size()) break;
        }
        return FinSet(out);
      },
      [](const FinFun& f, const Element& e) {
        std::vector<std::uint64_t> acc(f.cod().size(), 0);
        for (std::size_t i = 0; i < f.dom().size(); ++i) acc[f.at_index(i)] += e[i].atom_value();
        std::vector<Element> v;
        for (auto a : acc) v.push_back(Element::atom(a % 3));
        return Element::tuple(v);
      });
}

FunctorPtr square() { return product({identity(), identity()}); }

}  // namespace

TEST_CASE("constructors evaluate structurally") {
  FinSet two = FinSet::range(2);
  CHECK(square()->eval(two).size() == 4);
  CHECK(successor()->eval(FinSet()).size() == 1);
  CHECK(successor()->eval(FinSet())[0] == Element::star());
  CHECK(compose(square(), square())->eval(two).size() == 16);
  CHECK(sum({identity(), constant(3)})->eval(two).size() == 5);
  CHECK(product({})->eval(two).size() == 1);
  CHECK(empty_functor()->eval(two).empty());
}

TEST_CASE("functoriality of the constructor algebra") {
  for (const auto& f : {identity(), constant(2), successor(), square(), sum({identity(), constant(1)}),
                        compose(square(), successor()), local_powerset()})
    CHECK(check_functorial(f).passed());
}

TEST_CASE("check_taut examples") {
  CHECK(check_taut(local_powerset()).passed());
  CHECK(check_taut(constant(3)).passed());
  CHECK(check_taut(identity()).passed());
  CHECK(check_taut(square()).passed());
  CHECK(check_taut(compose(square(), local_powerset())).passed());
  CHECK(check_taut(successor()).passed());

  Report r = check_taut(z3_sums());
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.first_witness().empty());
  CHECK_FALSE(z3_sums()->certified());
}

TEST_CASE("the free-abelian stand-in fails on the specific square") {
  // X = 2, X0 = {0}, f : 2 -> 2 constant at 1, so the inverse image is empty
  auto t = z3_sums();
  FinSet x = FinSet::range(2), x0(std::vector<Element>{Element::atom(0)});
  FinFun f(x, x, {1, 1});
  FinFun a = t->map(FinFun::inclusion(x0, x)), b = t->map(f);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < a.dom().size(); ++i)
    for (std::size_t j = 0; j < b.dom().size(); ++j)
      if (a.at_index(i) == b.at_index(j)) ++pairs;
  // T(empty) has one element, the pullback has {(m,n) | m+n = 0} = 3
  CHECK(t->eval(FinSet()).size() == 1);
  CHECK(pairs == 3);
}

TEST_CASE("tautness of transformations") {
  auto sq = square();
  auto proj = make_transf(sq, identity(), [](const FinSet&, const Element& e) { return e[0]; }, "proj");
  auto diag = make_transf(identity(), sq, [](const FinSet&, const Element& e) { return Element::tuple({e, e}); },
                          "diag");
  CHECK(check_natural(proj).passed());
  CHECK_FALSE(check_taut_transf(proj).passed());
  CHECK(check_taut_transf(diag).passed());
  CHECK(check_taut_transf(identity_transf(sq)).passed());
  CHECK(check_taut_transf(successor_injection(local_powerset())).passed());
  CHECK(check_taut_transf(successor_injection(sq)).passed());

  auto bad = make_transf(identity(), identity(), [](const FinSet& x, const Element&) { return x[0]; }, "const");
  CHECK_FALSE(check_natural(bad).passed());
}

TEST_CASE("iso_witness with and without an explicit family") {
  auto id = identity();
  CHECK(iso_witness(id, id, {}, Family([](const FinSet&, const Element& e) { return e; })).passed());

  // X^2 modulo the principal ultrafilter at coordinate 0 against X
  auto reduced = make_functor(
      "X^2/U0",
      [](const FinSet& x) {
        std::vector<Element> v;
        for (const auto& e : x) v.push_back(Element::cls(Element::tuple({e, x[0]})));
        return FinSet(v);
      },
      [](const FinFun& f, const Element& c) {
        // class of (a, b) is determined by a; representative uses the least point for b
        return Element::cls(Element::tuple({f(c.inner()[0]), f.cod()[0]}));
      });
  Report r = iso_witness(reduced, id, {}, Family([](const FinSet&, const Element& c) { return c.inner()[0]; }));
  CHECK(r.passed());

  Report card = iso_witness(square(), compose(square(), identity()));
  CHECK(card.passed());
  REQUIRE_FALSE(card.notes().empty());
  CHECK(card.notes()[0] == "cardinality-consistent");
  CHECK_FALSE(iso_witness(square(), identity()).passed());
}

TEST_CASE("cancellation of a common summand") {
  auto f = identity(), g = square(), h = square();
  Family iso = [](const FinSet&, const Element& e) {
    if (sum_index(e) == 0) return e;
    return sum_element(1, Element::tuple({e.inner()[1], e.inner()[0]}));
  };
  auto c = cancel(f, g, h, iso);
  CHECK(c.report.passed());
  FinSet two = FinSet::range(2);
  CHECK(c.restricted(two, Element::tuple({two[0], two[1]})) == Element::tuple({two[1], two[0]}));
}
