#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fdiff {

enum class Kind : std::uint8_t { Atom = 0, Star = 1, Tuple = 2, Tag = 3, Cls = 4 };

namespace detail {
struct Node;
}

// Immutable, hash-consed tree value. Two elements are equal iff they share a node.
class Element {
 public:
  Element();  // Atom(0)

  static Element atom(std::uint64_t v);
  static Element star();
  static Element tuple(const std::vector<Element>& kids);
  static Element tag(const std::string& label, const Element& inner);
  static Element cls(const Element& rep);

  // subsets are encoded as Tag("set", Tuple(sorted unique members))
  static Element set(std::vector<Element> members);

  Kind kind() const;
  std::uint64_t atom_value() const;
  const std::string& label() const;
  std::size_t arity() const;
  const Element& operator[](std::size_t i) const;
  const std::vector<Element>& children() const;
  const Element& inner() const;  // Tag / Cls payload

  bool is_set() const;
  const std::vector<Element>& members() const;  // for set elements

  std::size_t hash() const;
  std::string str() const;

  friend bool operator==(const Element& a, const Element& b) { return a.n_ == b.n_; }
  friend bool operator!=(const Element& a, const Element& b) { return a.n_ != b.n_; }
  friend bool operator<(const Element& a, const Element& b);
  friend bool operator>(const Element& a, const Element& b) { return b < a; }
  friend bool operator<=(const Element& a, const Element& b) { return !(b < a); }

 private:
  explicit Element(const detail::Node* n) : n_(n) {}
  const detail::Node* n_;
  friend struct detail::Node;
};

int compare(const Element& a, const Element& b);

std::size_t interned_count();

}  // namespace fdiff

template <>
struct std::hash<fdiff::Element> {
  std::size_t operator()(const fdiff::Element& e) const noexcept { return e.hash(); }
};
