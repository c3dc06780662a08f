#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fdiff/classes.hpp"
#include "fdiff/functor.hpp"
#include "fdiff/report.hpp"
#include "fdiff/taut.hpp"

namespace fdiff {

// raised when delta is asked for a functor or transformation without a tautness certificate
class NotTautError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// delta[F](X) = F(X+1) minus the image of F(j); arrows are restrictions of F(f+1)
FunctorPtr delta(const FunctorPtr& f);
// component at X is t(X+1) restricted
TransfPtr delta_transf(const TransfPtr& t);
FunctorPtr iterated(const FunctorPtr& f, std::size_t n);
// elements of F(X+A) lying in no F(X+A0), A0 a proper subset of A; points of A enter as pointed(a)
FunctorPtr d_pointed(const FunctorPtr& f, const FinSet& a);
// the same with A = the first n fresh points, so that D_n and the n-fold delta share elements
FunctorPtr d_n(const FunctorPtr& f, std::size_t n);

// preimage of y under an injective map, if any
std::optional<Element> preimage(const FinFun& m, const Element& y);

// |delta F(k)| = |F(k+1)| - |F(k)| for k <= kmax
Report counting_law(const FunctorPtr& f, int kmax = 5);
// F + delta F -> F o S, (0,a) |-> F(j)(a), (1,b) |-> b
Report coproduct_law(const FunctorPtr& f, int K = 4);
// delta^n and D_n agree elementwise at |X| <= K
Report iterated_vs_dn(const FunctorPtr& f, std::size_t n, int K = 3);
// D_A o D_B against D_{A+B}; A and B are tagged apart as summands 0 and 1
Report d_composition_check(const FunctorPtr& f, std::size_t a, std::size_t b, int K = 2);

// ---------------- symbolic delta ----------------

struct SymbolicDelta {
  ClassSpec spec;          // closed form
  Family to_closed;        // explicit bijection delta[F](X) -> realize(spec)(X)
  std::string formula;     // human-readable statement
};

SymbolicDelta symbolic_delta(const ClassSpec& spec);
// realized closed form against the operational delta: bijective and natural at |X| <= K
Report verify_symbolic_delta(const ClassSpec& spec, int K = 4);

// ---------------- product rules ----------------

// delta[F x G] ~ (dF x G) + (F x dG) + (dF x dG)
Report product_rule_check(const FunctorPtr& f, const FunctorPtr& g, int K = 3);
// delta[prod F_i] ~ sum over proper subsets S of (prod_{i in S} F_i x prod_{i not in S} dF_i)
Report finite_product_rule_check(const std::vector<FunctorPtr>& fs, int K = 3);
// the right-hand side of the n-ary rule, summand index = bit mask of S
FunctorPtr product_rule_rhs(const std::vector<FunctorPtr>& fs);

}  // namespace fdiff
