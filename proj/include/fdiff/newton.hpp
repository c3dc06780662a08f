#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fdiff/classes.hpp"
#include "fdiff/delta.hpp"
#include "fdiff/functor.hpp"
#include "fdiff/report.hpp"
#include "fdiff/taut.hpp"

namespace fdiff {

// surjection m ->> n as its image list; m = size, n = max + 1 (0 when m = 0)
using Surjection = std::vector<std::uint32_t>;

std::vector<Surjection> surjections(std::size_t m, std::size_t n);
std::size_t surj_target(const Surjection& s);
Surjection surj_compose(const Surjection& t, const Surjection& s);  // t after s
FinFun surj_fun(const Surjection& s);  // as a map range(m) -> range(n)
std::string surj_str(const Surjection& s);

// functor from surjections between cardinals <= N to finite sets
class SoftSpecies {
 public:
  using ActFn = std::function<Element(const Surjection&, const Element&)>;

  SoftSpecies() = default;
  // actions computed for every surjection; identity and composition laws checked, invalid_argument otherwise
  SoftSpecies(std::size_t N, std::vector<FinSet> sets, const ActFn& act, std::string name = "G");
  // actions given on some surjections, closed under composition; conflicts or gaps are errors
  static SoftSpecies generated(std::size_t N, std::vector<FinSet> sets, const std::map<Surjection, FinFun>& gens,
                               std::string name = "G");

  std::size_t degree_bound() const { return n_; }
  const std::string& name() const { return name_; }
  const FinSet& at(std::size_t n) const { return sets_.at(n); }
  const FinFun& action(const Surjection& s) const;
  Element act(const Surjection& s, const Element& a) const { return action(s)(a); }
  SoftSpecies truncate(std::size_t N) const;
  std::size_t total_size() const;
  std::string describe() const;  // sizes per degree

 private:
  std::size_t n_ = 0;
  std::vector<FinSet> sets_;
  std::map<Surjection, FinFun> act_;
  std::string name_;
};

// component-wise map of soft species, naturality checked
struct SoftMap {
  SoftSpecies src, dst;
  std::vector<FinFun> components;
};
SoftMap soft_map(const SoftSpecies& src, const SoftSpecies& dst, std::vector<FinFun> components);

// Newton sum: elements sum_element(n, Tuple(Tuple(I), a)) with I an increasing n-subset of X and a in G(n)
FunctorPtr newton_sum(const SoftSpecies& g);
TransfPtr newton_sum_transf(const SoftMap& t);
// (I, a) |-> [I ; a]: the class of the increasing injection of I with a
Element newton_element(const std::vector<Element>& image, const Element& a);

// G(n) = elements of F(n) outside the images of F(n - {i}); F must carry a certificate
SoftSpecies delta_star(const FunctorPtr& f, std::size_t N);

// G(n) = orbits of pairs (f : m ->> n, c in C_m) under S_m; elements as species_canonical of (f, c)
SoftSpecies soften(const SpeciesSpec& s, std::size_t N);
// newton_sum(soften(s)) against analytic_functor(s), through the image factorisation of x
Report soften_check(const SpeciesSpec& s, int K = 4);

// a |-> [a, id_n] is a bijection G(n) -> delta^n[newton_sum G](0) commuting with every surjection
Report unit_iso_check(const SoftSpecies& g);
// newton_sum(delta_star(F)) -> F, [a, I] |-> F(inc_I)(a), bijective and natural at |X| <= K
Report counit_iso_check(const FunctorPtr& f, std::size_t N, int K = 4);
// |newton_sum(delta_star F)(k)| against |F(k)| past the truncation; comparison only
Report truncation_comparison(const FunctorPtr& f, std::size_t N, int kmax = 5);

// u[n] : G(n) -> F(n) natural over surjections; t[a, I] = F(inc_I)(u(a)).
// Checks: u lands in delta_star(F) iff t is taut at |X| <= K
Report adjunction_factorization_check(const SoftSpecies& g, const FunctorPtr& f, const std::vector<FinFun>& u,
                                      int K = 3);
struct AdjunctionInstance {
  std::string name;
  SoftSpecies g;
  FunctorPtr f;
  std::vector<FinFun> u;
  bool lands = true;  // expected
};
std::vector<AdjunctionInstance> adjunction_instances();

// seeded random soft species: S_n-sets built from cosets, degeneracies drawn and rejected until functorial
SoftSpecies random_soft_species(std::uint64_t seed, std::size_t N = 3, std::size_t max_size = 4);

// {"N": 2, "G": [0, 1, 2], "actions": {"2->1:0,0": [0, 0], "2->2:1,0": [1, 0]}}; elements are atoms 0..|G(n)|-1
SoftSpecies soft_species_from_json(const std::string& text);

}  // namespace fdiff
