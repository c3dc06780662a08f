#include "fdiff/library.hpp"

namespace fdiff {

std::vector<NamedSpec> class_library() {
  std::vector<NamedSpec> out;
  for (std::size_t n = 1; n <= 4; ++n) out.push_back({"X^" + std::to_string(n), PolySpec{{n}}});
  for (std::size_t n = 1; n <= 4; ++n) out.push_back({"X^[" + std::to_string(n) + "]", divided_power(n)});

  out.push_back({"X^3/C3", QuotPowerSpec{{{3, PermGroup::cyclic(3)}}}});
  // Klein four-group generated by the double transpositions
  out.push_back({"X^4/V4", QuotPowerSpec{{{4, PermGroup(4, {{1, 0, 3, 2}, {2, 3, 0, 1}})}}}});
  out.push_back({"X^4/S2xS2", QuotPowerSpec{{{4, PermGroup::direct_product(PermGroup::symmetric(2),
                                                                             PermGroup::symmetric(2))}}}});

  // X^[2] + X^2, and 1 + X + cyclically ordered triples
  out.push_back({"X^[2] + X^2", species_sum(species_divided(2), species_power(2))});
  out.push_back({"1 + X + X^3/C3 (analytic)",
                 species_sum(species_sum(species_power(0), species_power(1)), species_cosets(3, PermGroup::cyclic(3)))});

  Lattice c3 = Lattice::chain(3);
  c3.rename("chain3");
  out.push_back({"chain3^[X]", DirichletSpec{{{FinSet::range(1), c3, true}}}});
  out.push_back({"6_*^[X]", DirichletSpec{{{FinSet::range(1), n_star(6), true}}}});
  out.push_back({"zeta(4)", zeta_spec(4)});

  out.push_back({"F", MonadSpec{MonadKind::Filter}});
  out.push_back({"P", MonadSpec{MonadKind::Powerset}});
  out.push_back({"beta", MonadSpec{MonadKind::Ultrafilter}});
  return out;
}

}  // namespace fdiff
