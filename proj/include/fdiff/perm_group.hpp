#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fdiff/finset.hpp"

namespace fdiff {

// permutation of {0..n-1} as its image list
using Perm = std::vector<std::uint8_t>;

Perm perm_identity(std::size_t n);
Perm perm_compose(const Perm& p, const Perm& q);  // p after q
Perm perm_inverse(const Perm& p);
bool perm_valid(const Perm& p);
std::string perm_str(const Perm& p);
std::vector<Perm> all_perms(std::size_t n);

class PermGroup {
 public:
  static constexpr std::size_t kDefaultMaxDegree = 8;

  PermGroup() : PermGroup(0, {}) {}
  PermGroup(std::size_t degree, std::vector<Perm> generators,
            std::size_t max_degree = kDefaultMaxDegree);

  static PermGroup symmetric(std::size_t n);
  static PermGroup cyclic(std::size_t n);
  static PermGroup trivial(std::size_t n);
  static PermGroup direct_product(const PermGroup& a, const PermGroup& b);  // acts on a.deg + b.deg points
  static PermGroup from_elements(std::size_t degree, const std::vector<Perm>& elems);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Perm>& elements() const { return elems_; }
  bool contains(const Perm& p) const;
  std::size_t index_of(const Perm& p) const;
  bool is_symmetric() const { return elems_.size() == factorial(degree_); }

  // stabilizer of the subset b (setwise), restricted to b's points in increasing order
  PermGroup setwise_stabilizer_restricted(const std::vector<std::size_t>& b) const;

  // every subgroup, by closure of single-element extensions (degree <= 5)
  std::vector<PermGroup> subgroups() const;

  std::string str() const;
  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree_ == b.degree_ && a.elems_ == b.elems_;
  }

 private:
  std::size_t degree_;
  std::vector<Perm> gens_;
  std::vector<Perm> elems_;  // sorted
};

// left action of a permutation group on a finite set, as a table of indices
class GroupAction {
 public:
  using ActFn = std::function<Element(const Perm&, const Element&)>;
  GroupAction() = default;
  GroupAction(PermGroup group, FinSet carrier, const ActFn& act);  // validates the action laws

  const PermGroup& group() const { return group_; }
  const FinSet& carrier() const { return carrier_; }
  Element act(const Perm& g, const Element& x) const;
  std::size_t act_index(std::size_t g, std::size_t x) const { return table_[g][x]; }

  Element orbit_min(const Element& x) const;
  std::vector<std::pair<Element, FinSet>> orbits() const;
  PermGroup stabilizer(const Element& x) const;

 private:
  PermGroup group_;
  FinSet carrier_;
  std::vector<std::vector<std::uint32_t>> table_;
};

// the regular action of S_n on itself by left multiplication, carrier = perms as tuples
Element perm_element(const Perm& p);
Perm element_perm(const Element& e);
GroupAction regular_action(std::size_t n);
GroupAction trivial_action(std::size_t n, std::size_t points);

// subsets of {0..n-1} as set elements of atoms
Element subset_element(const std::vector<std::size_t>& b);
std::vector<std::size_t> subset_indices(const Element& s);

}  // namespace fdiff
