#include "doctest.h"
#include "fdiff/commutation.hpp"

using namespace fdiff;

namespace {

FunctorPtr square() { return product({identity(), identity()}); }

TransfPtr swap_on(const FunctorPtr& sq) {
  return make_transf(sq, sq, [](const FinSet&, const Element& e) { return Element::tuple({e[1], e[0]}); }, "swap");
}

}  // namespace

TEST_CASE("binary coproduct shape") {
  auto sq = square();
  auto p = powerset_monad().functor;
  FunctorDiagram d{FinCat::discrete(2), {sq, p}, {nullptr, nullptr}};
  CHECK(colimit_commutation_check(d).passed());
  auto col = colimit_functor(d);
  for (std::size_t k = 0; k <= 3; ++k)
    CHECK(col->eval(test_set(k)).size() == k * k + (1u << k));
}

TEST_CASE("quotient of X^2 by the swap") {
  auto sq = square();
  FinCat z2 = FinCat::cyclic_group(2);
  std::vector<TransfPtr> maps(z2.morphisms());
  for (std::size_t m = 0; m < z2.morphisms(); ++m)
    if (!z2.is_identity(m)) maps[m] = swap_on(sq);
  FunctorDiagram d{z2, {sq}, maps};
  auto col = colimit_functor(d);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(col->eval(test_set(k)).size() == k * (k + 1) / 2);
  Report r = colimit_commutation_check(d);
  INFO(r.text());
  CHECK(r.passed());
}

TEST_CASE("equalizer of two taut maps") {
  auto sq = square();
  FinCat pp = FinCat::parallel_pair();
  FunctorDiagram d{pp, {sq, sq}, {nullptr, nullptr, identity_transf(sq), swap_on(sq)}};
  auto lim = limit_functor(d);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(lim->eval(test_set(k)).size() == k);
  Report r = connected_limit_commutation_check(d);
  INFO(r.text());
  CHECK(r.passed());
}

TEST_CASE("non-confluent shapes are refused") {
  auto sq = square();
  FinCat span = FinCat::span();
  std::vector<TransfPtr> maps(span.morphisms());
  for (std::size_t m = 0; m < span.morphisms(); ++m)
    if (!span.is_identity(m)) maps[m] = identity_transf(sq);
  FunctorDiagram d{span, {sq, sq, sq}, maps};
  CHECK_THROWS_AS(colimit_commutation_check(d), std::invalid_argument);
  CHECK(connected_limit_commutation_check(d).passed());
}
