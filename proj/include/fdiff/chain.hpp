#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fdiff/classes.hpp"
#include "fdiff/delta.hpp"
#include "fdiff/functor.hpp"
#include "fdiff/report.hpp"
#include "fdiff/taut.hpp"

namespace fdiff {

// [F j_X, x] : F X + 1 -> F(X + 1)
FinFun phi(const FunctorPtr& f, const FinSet& x, const Element& point);

// gamma(y, x) = G(phi_x)(y) : (delta[G] o F) x delta[F] -> delta[G o F]
struct GammaWitness {
  FunctorPtr f, g;
  FunctorPtr lhs;  // product of delta[G] o F and delta[F]; elements Tuple(y, x)
  FunctorPtr rhs;  // delta[G o F]
  TransfPtr gamma;
};
// F and G must carry certificates; G o F and the source product are run through check_taut
GammaWitness gamma(const FunctorPtr& f, const FunctorPtr& g);
Element gamma_at(const FunctorPtr& f, const FunctorPtr& g, const FinSet& x, const Element& y, const Element& xe);

// containment, injectivity, per-x disjointness, naturality and tautness at |X| <= opt.K
Report gamma_check(const GammaWitness& w, const TautOptions& opt = {});

// |LHS(k)| and |RHS(k)| for k = 0..kmax, interpolated to integer coefficient vectors (highest degree first)
struct ChainComparison {
  std::vector<std::uint64_t> lhs_counts, rhs_counts;
  std::vector<std::int64_t> lhs_coeffs, rhs_coeffs;
  Report report;
};
ChainComparison chain_rule_comparison(const FunctorPtr& f, const FunctorPtr& g, int kmax = 4);
// exact integer polynomial through (k, values[k]); throws if the interpolant has non-integer coefficients
std::vector<std::int64_t> interpolate(const std::vector<std::uint64_t>& values);
std::string poly_string(const std::vector<std::int64_t>& coeffs);

// t : F -> F', u : G -> G'; delta(u * t) o gamma = gamma' o (delta u o t x delta t)
Report gamma_naturality_check(const TransfPtr& t, const TransfPtr& u, const TautOptions& opt = {});

// gamma_{H, G o F} (id x gamma_{G,F}) = gamma_{H o G, F} (gamma_{H,G} o F x id), elementwise at |X| <= K;
// a test set is skipped (and noted) once the triple count exceeds max_triples
Report gamma_associativity_check(const FunctorPtr& f, const FunctorPtr& g, const FunctorPtr& h, int K = 2,
                                 std::size_t max_triples = 1u << 16);
// gamma_{Id,F} and gamma_{F,Id} are bijections acting as projections
Report gamma_unit_checks(const FunctorPtr& f, int K = 2);

// ---------------- the tangent-style functor on pairs ----------------

struct SetPair {
  FinSet a, b;
};
struct FunPair {
  FinFun a, b;
};
FinSet set_product(const FinSet& a, const FinSet& b);  // Tuple(a, b)

// D(F)(A, B) = (F A, delta[F](A) x B)
class TangentD {
 public:
  explicit TangentD(FunctorPtr f);
  const FunctorPtr& functor() const { return f_; }
  const FunctorPtr& difference() const { return df_; }
  SetPair eval(const SetPair& p) const;
  FunPair map(const FunPair& m) const;

 private:
  FunctorPtr f_, df_;
};
TangentD tangent_D(const FunctorPtr& f);

// D(G) o D(F) -> D(G o F): identity on the first coordinate, (y, (x, b)) |-> (gamma(y, x), b);
// injective and natural in pairs of maps at sizes <= K
Report tangent_monoidal_check(const FunctorPtr& f, const FunctorPtr& g, int K = 2);

// the monad on pairs induced by a taut monad T
class DMonad {
 public:
  explicit DMonad(Monad m);
  const Monad& base() const { return m_; }
  const TangentD& tangent() const { return d_; }
  // (eta_A, b |-> (h_A, b)) with h_A = delta[eta] at the fresh point
  FunPair unit(const SetPair& p) const;
  // (mu_A, (y, (x, b)) |-> (delta[mu](A)(gamma(y, x)), b))
  FunPair mult(const SetPair& p) const;

 private:
  Monad m_;
  TangentD d_;
};
// unit and associativity laws elementwise at |A|, |B| <= K, plus the laws of T itself
Report d_monad_laws(const Monad& m, int K = 2);

// ---------------- splittings of gamma ----------------

// natural retractions r : Y^n -> Y of the diagonal, Y = X + 1 when pointed, Y = X otherwise;
// candidates are assignments on equality patterns, naturality tested against every map of an n-point set
struct SplittingCount {
  std::size_t n = 0;
  bool pointed = false;
  std::size_t patterns = 0;
  std::size_t candidates = 0;
  std::size_t natural_retractions = 0;
  std::size_t invariant = 0;  // also invariant under permuting the n coordinates
};
SplittingCount diagonal_retractions(std::size_t n, bool pointed);
// summary for G = X^n: summand-wise canonical splittings and, for delta[F] = X + 1, the pointed count
Report splitting_search(std::size_t n = 3);

}  // namespace fdiff
