#pragma once

#include <vector>

#include "fdiff/delta.hpp"
#include "fdiff/diagram.hpp"

namespace fdiff {

// diagram of endofunctors: one functor per object, one transformation per morphism (null at identities)
struct FunctorDiagram {
  FinCat shape;
  std::vector<FunctorPtr> functors;
  std::vector<TransfPtr> maps;
};

Diagram evaluate(const FunctorDiagram& d, const FinSet& x);
// pointwise colimit; elements as in colimit()
FunctorPtr colimit_functor(const FunctorDiagram& d);
// pointwise limit; elements are compatible tuples over the objects
FunctorPtr limit_functor(const FunctorDiagram& d);
// delta of every functor and transformation; all of them must be certified
FunctorDiagram delta_diagram(const FunctorDiagram& d);

// colim delta[G I] ~ delta[colim G I]; refuses non-confluent shapes
Report colimit_commutation_check(const FunctorDiagram& d, int K = 3);
// delta[lim G I] ~ lim delta[G I] over a nonempty connected shape
Report connected_limit_commutation_check(const FunctorDiagram& d, int K = 3);

}  // namespace fdiff
