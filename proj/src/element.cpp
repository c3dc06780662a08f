#include "fdiff/element.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace fdiff {
namespace detail {

struct Node {
  Kind kind;
  std::uint64_t value = 0;
  std::string label;
  std::vector<Element> kids;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t node_hash(const Node& n) {
  std::size_t h = mix(static_cast<std::size_t>(n.kind) * 0x100000001b3ULL, n.value);
  if (!n.label.empty()) h = mix(h, std::hash<std::string>{}(n.label));
  for (const auto& k : n.kids) h = mix(h, k.hash());
  return h;
}

struct NodePtrHash {
  std::size_t operator()(const Node* n) const { return n->hash; }
};
struct NodePtrEq {
  bool operator()(const Node* a, const Node* b) const {
    return a->kind == b->kind && a->value == b->value && a->label == b->label && a->kids == b->kids;
  }
};

constexpr std::size_t kShards = 16;

struct Shard {
  std::mutex mu;
  std::unordered_set<const Node*, NodePtrHash, NodePtrEq> table;
};

Shard* shards() {
  // intentionally leaked: elements must outlive every static that holds one
  static Shard* s = new Shard[kShards];
  return s;
}

const Node* intern(Node&& proto) {
  proto.hash = node_hash(proto);
  Shard& sh = shards()[proto.hash % kShards];
  std::lock_guard<std::mutex> lock(sh.mu);
  auto it = sh.table.find(&proto);
  if (it != sh.table.end()) return *it;
  const Node* fresh = new Node(std::move(proto));
  sh.table.insert(fresh);
  return fresh;
}

const Node* atom_node(std::uint64_t v) {
  Node n;
  n.kind = Kind::Atom;
  n.value = v;
  return intern(std::move(n));
}

}  // namespace
}  // namespace detail

using detail::Node;

Element::Element() : n_(detail::atom_node(0)) {}

Element Element::atom(std::uint64_t v) {
  static std::vector<const Node*> small = [] {
    std::vector<const Node*> out;
    for (std::uint64_t i = 0; i < 64; ++i) out.push_back(detail::atom_node(i));
    return out;
  }();
  if (v < small.size()) return Element(small[v]);
  return Element(detail::atom_node(v));
}

Element Element::star() {
  static const Node* s = [] {
    Node n;
    n.kind = Kind::Star;
    return detail::intern(std::move(n));
  }();
  return Element(s);
}

Element Element::tuple(const std::vector<Element>& kids) {
  Node n;
  n.kind = Kind::Tuple;
  n.kids = kids;
  return Element(detail::intern(std::move(n)));
}

Element Element::tag(const std::string& label, const Element& inner) {
  Node n;
  n.kind = Kind::Tag;
  n.label = label;
  n.kids = {inner};
  return Element(detail::intern(std::move(n)));
}

Element Element::cls(const Element& rep) {
  Node n;
  n.kind = Kind::Cls;
  n.kids = {rep};
  return Element(detail::intern(std::move(n)));
}

Element Element::set(std::vector<Element> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return tag("set", tuple(members));
}

Kind Element::kind() const { return n_->kind; }
std::uint64_t Element::atom_value() const {
  if (n_->kind != Kind::Atom) throw std::logic_error("atom_value on non-atom " + str());
  return n_->value;
}
const std::string& Element::label() const { return n_->label; }
std::size_t Element::arity() const { return n_->kids.size(); }
const Element& Element::operator[](std::size_t i) const { return n_->kids.at(i); }
const std::vector<Element>& Element::children() const { return n_->kids; }
const Element& Element::inner() const {
  if (n_->kind != Kind::Tag && n_->kind != Kind::Cls)
    throw std::logic_error("inner() on " + str());
  return n_->kids[0];
}

bool Element::is_set() const { return n_->kind == Kind::Tag && n_->label == "set"; }
const std::vector<Element>& Element::members() const {
  if (!is_set()) throw std::logic_error("members() on non-set " + str());
  return n_->kids[0].children();
}

std::size_t Element::hash() const { return n_->hash; }

int compare(const Element& a, const Element& b) {
  if (a == b) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Atom:
      return a.atom_value() < b.atom_value() ? -1 : 1;
    case Kind::Star:
      return 0;
    case Kind::Tag:
      if (a.label() != b.label()) return a.label() < b.label() ? -1 : 1;
      [[fallthrough]];
    case Kind::Tuple:
    case Kind::Cls: {
      const auto& x = a.children();
      const auto& y = b.children();
      std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(x[i], y[i]);
        if (c != 0) return c;
      }
      if (x.size() == y.size()) return 0;
      return x.size() < y.size() ? -1 : 1;
    }
  }
  return 0;
}

bool operator<(const Element& a, const Element& b) { return compare(a, b) < 0; }

std::string Element::str() const {
  switch (kind()) {
    case Kind::Atom:
      return std::to_string(n_->value);
    case Kind::Star:
      return "*";
    case Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < arity(); ++i) {
        if (i) s += ",";
        s += n_->kids[i].str();
      }
      return s + ")";
    }
    case Kind::Tag: {
      if (is_set()) {
        std::string s = "{";
        const auto& m = members();
        for (std::size_t i = 0; i < m.size(); ++i) {
          if (i) s += ",";
          s += m[i].str();
        }
        return s + "}";
      }
      if (label() == "*") return "*" + inner().str();
      if (label() == "<>") return "<" + inner().str() + ">";
      return label() + ":" + inner().str();
    }
    case Kind::Cls:
      return "[" + inner().str() + "]";
  }
  return "?";
}

std::size_t interned_count() {
  std::size_t total = 0;
  for (std::size_t i = 0; i < detail::kShards; ++i) {
    std::lock_guard<std::mutex> lock(detail::shards()[i].mu);
    total += detail::shards()[i].table.size();
  }
  return total;
}

}  // namespace fdiff
