#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdiff/element.hpp"

namespace fdiff {

// Strictly ordered, duplicate-free sequence of elements. Cheap to copy.
class FinSet {
 public:
  FinSet();
  explicit FinSet(std::vector<Element> elems);  // sorts and dedups
  static FinSet from_sorted(std::vector<Element> elems);  // caller guarantees order
  static FinSet range(std::size_t n);  // atoms 0..n-1

  std::size_t size() const { return e_->size(); }
  bool empty() const { return e_->empty(); }
  const Element& operator[](std::size_t i) const { return (*e_)[i]; }
  const std::vector<Element>& elems() const { return *e_; }
  auto begin() const { return e_->begin(); }
  auto end() const { return e_->end(); }

  std::optional<std::size_t> index_of(const Element& x) const;
  std::size_t index(const Element& x) const;  // throws if absent
  bool contains(const Element& x) const { return index_of(x).has_value(); }
  bool subset_of(const FinSet& other) const;

  std::size_t hash() const { return h_; }
  std::string str() const;

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.e_ == b.e_ || (a.h_ == b.h_ && *a.e_ == *b.e_);
  }
  friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }

 private:
  std::shared_ptr<const std::vector<Element>> e_;
  std::size_t h_ = 0;
  void rehash();
};

FinSet set_union(const FinSet& a, const FinSet& b);
FinSet set_difference(const FinSet& a, const FinSet& b);
FinSet set_intersection(const FinSet& a, const FinSet& b);

// Total function between finite sets, stored as an index table.
class FinFun {
 public:
  FinFun() = default;
  FinFun(FinSet dom, FinSet cod, std::vector<std::uint32_t> img);
  static FinFun from_elements(const FinSet& dom, const FinSet& cod, const std::vector<Element>& images);
  static FinFun identity(const FinSet& x);
  static FinFun inclusion(const FinSet& sub, const FinSet& x);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  const std::vector<std::uint32_t>& table() const { return img_; }
  std::uint32_t at_index(std::size_t i) const { return img_[i]; }
  const Element& operator()(const Element& x) const;
  const Element& image_of_index(std::size_t i) const { return cod_[img_[i]]; }

  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }
  FinSet image() const;
  std::optional<FinFun> inverse() const;

  std::size_t hash() const;
  std::string str() const;

  friend bool operator==(const FinFun& a, const FinFun& b) {
    return a.img_ == b.img_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

 private:
  FinSet dom_, cod_;
  std::vector<std::uint32_t> img_;
};

FinFun compose(const FinFun& g, const FinFun& f);  // g after f

// epi onto the image (as a subset of cod), then the inclusion
std::pair<FinFun, FinFun> image_factorize(const FinFun& f);
FinSet inverse_image(const FinFun& f, const FinSet& sub);
FinFun restrict(const FinFun& f, const FinSet& sub);  // f on a subset of its domain

// fresh points and the successor X + 1
Element fresh(const FinSet& x);
FinSet succ(const FinSet& x);
FinFun succ_map(const FinFun& f);  // f + 1, fresh to fresh
FinFun succ_inclusion(const FinSet& x);  // j : X -> X + 1
std::vector<Element> fresh_chain(const FinSet& x, std::size_t n);  // points added by n successors
FinSet succ_n(const FinSet& x, std::size_t n);

// X + A with A's points tagged apart from X
FinSet plus_pointed(const FinSet& x, const FinSet& a);
Element pointed(const Element& a);

std::vector<FinFun> all_functions(const FinSet& x, const FinSet& y);
std::vector<FinFun> enumerate_monos(std::size_t n, const FinSet& x);
std::vector<FinFun> enumerate_surjections(std::size_t m, std::size_t n);
std::vector<FinSet> all_subsets(const FinSet& x);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
std::uint64_t factorial(std::uint64_t n);
std::uint64_t stirling2(std::uint64_t n, std::uint64_t k);

struct FinSetHash {
  std::size_t operator()(const FinSet& s) const { return s.hash(); }
};
struct FinFunHash {
  std::size_t operator()(const FinFun& f) const { return f.hash(); }
};

}  // namespace fdiff
