#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "fdiff/functor.hpp"
#include "fdiff/perm_group.hpp"
#include "fdiff/report.hpp"
#include "fdiff/taut.hpp"

namespace fdiff {

// ---------------- polynomial functors: sum over i of X^{A_i} ----------------

struct PolySpec {
  std::vector<std::size_t> exponents;  // summand i is X^{exponents[i]}
};

FunctorPtr poly_functor(const PolySpec& spec);
std::string describe(const PolySpec& spec);
// coefficient of X^d at index d
std::vector<std::uint64_t> coefficients(const PolySpec& spec);

// (i, phi) |-> (alpha(i), phi o f_i) with f_i : B_{alpha(i)} -> A_i
TransfPtr poly_morphism(const PolySpec& src, const PolySpec& dst, const std::vector<std::size_t>& alpha,
                        const std::vector<FinFun>& fs);
bool is_taut_poly_morphism(const std::vector<FinFun>& fs);

// ---------------- quotient powers: sum of X^n / G ----------------

struct QuotPowerSpec {
  std::vector<std::pair<std::size_t, PermGroup>> terms;
};

QuotPowerSpec divided_power(std::size_t n);  // X^[n] = X^n / S_n
FunctorPtr quot_power_functor(const QuotPowerSpec& spec);
std::string describe(const QuotPowerSpec& spec);
// least t o g over g in G, as a tuple
Element quot_canonical(const std::vector<Element>& t, const PermGroup& g);

// ---------------- analytic functors: sum of X^n (x)_{S_n} C_n ----------------

struct SpeciesSpec {
  std::vector<GroupAction> coeff;  // coeff[n] is an S_n-set (possibly empty)
};

SpeciesSpec species_power(std::size_t n);     // C_n = S_n acting on itself: X^n
SpeciesSpec species_divided(std::size_t n);   // C_n = 1: X^[n]
SpeciesSpec species_cosets(std::size_t n, const PermGroup& g);  // C_n = S_n / G: X^n / G
SpeciesSpec species_sum(const SpeciesSpec& a, const SpeciesSpec& b);
GroupAction empty_action(std::size_t n);
FunctorPtr analytic_functor(const SpeciesSpec& spec);
std::string describe(const SpeciesSpec& spec);
// canonical [x ; c] : least (x o s, s^{-1} c) over s in S_n
Element species_canonical(const GroupAction& c, const std::vector<Element>& x, const Element& cval);
std::size_t species_degree(const SpeciesSpec& spec);

// ---------------- finite lattices ----------------

class Lattice {
 public:
  Lattice() = default;
  // leq[i][j] says elems[i] <= elems[j]; validated to be a lattice with all joins
  Lattice(FinSet elems, const std::vector<std::vector<char>>& leq, std::string name);

  static Lattice chain(std::size_t n);  // atoms 0 < 1 < ... < n-1
  static Lattice product_of(const std::vector<Lattice>& factors, const std::string& name = "");
  static Lattice boolean(std::size_t k);

  std::size_t size() const { return elems_.size(); }
  const FinSet& elements() const { return elems_; }
  const Element& element(std::size_t i) const { return elems_[i]; }
  std::size_t index(const Element& e) const { return elems_.index(e); }
  std::size_t bottom() const { return bot_; }
  std::size_t top() const { return top_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  bool is_chain() const;
  Lattice down_set(std::size_t l) const;
  const std::string& name() const { return name_; }
  void rename(std::string n) { name_ = std::move(n); }

 private:
  FinSet elems_;
  std::vector<char> leq_;
  std::vector<std::uint32_t> join_;
  std::size_t bot_ = 0, top_ = 0;
  std::string name_;
};

// lattice from JSON text {"elems":[...names...], "leq":[[a,b],...]} (reflexive-transitive closure taken)
Lattice lattice_from_json(const std::string& text);
bool lattices_isomorphic(const Lattice& a, const Lattice& b);

// L^X (full) and L^[X] (join is top); elements are tuples of lattice elements over X's order
FunctorPtr normalized_exponential(const Lattice& l);
FunctorPtr full_exponential(const Lattice& l);

struct DirichletTerm {
  FinSet coeff;
  Lattice lattice;
  bool normalized = true;
};
struct DirichletSpec {
  std::vector<DirichletTerm> terms;
};
FunctorPtr dirichlet_functor(const DirichletSpec& spec);
std::string describe(const DirichletSpec& spec);

// phi given as an index map L -> M
bool is_sup_map(const Lattice& l, const Lattice& m, const std::vector<std::size_t>& phi);
bool preserves_top(const Lattice& l, const Lattice& m, const std::vector<std::size_t>& phi);
bool reflects_bottom(const Lattice& l, const Lattice& m, const std::vector<std::size_t>& phi);
std::vector<std::vector<std::size_t>> top_preserving_sup_maps(const Lattice& l, const Lattice& m);
TransfPtr lattice_map_transf(const Lattice& l, const Lattice& m, const std::vector<std::size_t>& phi);
struct Reconstruction {
  std::optional<std::vector<std::size_t>> phi;
  Report report;
};
Reconstruction reconstruct_phi(const TransfPtr& t, const Lattice& l, const Lattice& m, int K = 3);

// ---------------- n_* and sequential Dirichlet functors ----------------

std::vector<std::uint64_t> primes_upto(std::uint64_t n);
std::uint64_t prime_pi(std::uint64_t p);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // with repetition, increasing
Lattice n_star(std::uint64_t n);
// coeffs[n-1] is the coefficient set of n_*^[X]
DirichletSpec sequential_dirichlet_spec(const std::vector<FinSet>& coeffs);
FunctorPtr sequential_dirichlet(const std::vector<FinSet>& coeffs);
FunctorPtr zeta_truncation(std::size_t n);
DirichletSpec zeta_spec(std::size_t n);

Report euler_check(const std::vector<std::uint64_t>& primes, std::uint64_t bound, int K = 3);
// r_*^[X] x s_*^[X] ~ (rs)_*^[X] by merging coordinates
Report star_product_check(std::uint64_t r, std::uint64_t s, int K = 3);
// (sum C_r r_*^[X]) x (sum D_s s_*^[X]) ~ sum_n sum_{rs=n} (C_r x D_s) n_*^[X]
Report sequential_product_check(const std::vector<FinSet>& c, const std::vector<FinSet>& d, int K = 3);
Report lattice_iso_unique_factorization(std::size_t max_size = 36);

// ---------------- filters, powerset, ultrafilters ----------------

struct Monad {
  std::string name;
  FunctorPtr functor;
  TransfPtr unit;  // Id -> T
  TransfPtr mult;  // T o T -> T
  // random element of T(Y) without enumerating T(Y)
  std::function<Element(const FinSet&, std::mt19937_64&)> sample;
};

Monad filter_monad();
Monad powerset_monad();
FunctorPtr proper_filter_functor();
FunctorPtr ultrafilter_functor();
Element filter_element(const Element& generator_set);
Report monad_laws(const Monad& m, const TautOptions& opt = {});

// ---------------- symbolic class specs ----------------

enum class MonadKind { Filter, ProperFilter, Ultrafilter, Powerset };
struct MonadSpec {
  MonadKind kind;
};

using ClassSpec = std::variant<PolySpec, QuotPowerSpec, SpeciesSpec, DirichletSpec, MonadSpec>;

FunctorPtr realize(const ClassSpec& spec);
std::string describe(const ClassSpec& spec);
std::string describe(const MonadSpec& spec);
std::string class_name(const ClassSpec& spec);

}  // namespace fdiff
