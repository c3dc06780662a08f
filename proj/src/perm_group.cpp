#include "fdiff/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace fdiff {

Perm perm_identity(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(i);
  return p;
}

Perm perm_compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint8_t>(i);
  return r;
}

bool perm_valid(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::string perm_str(const Perm& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

std::vector<Perm> all_perms(std::size_t n) {
  std::vector<Perm> out;
  Perm p = perm_identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// ---- PermGroup ----

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t max_degree)
    : degree_(degree), gens_(std::move(generators)) {
  if (degree > max_degree)
    throw std::invalid_argument("PermGroup: degree " + std::to_string(degree) + " above bound " +
                                std::to_string(max_degree));
  for (const auto& g : gens_)
    if (g.size() != degree || !perm_valid(g))
      throw std::invalid_argument("PermGroup: malformed permutation " + perm_str(g));
  std::set<Perm> seen{perm_identity(degree)};
  std::deque<Perm> todo{perm_identity(degree)};
  while (!todo.empty()) {
    Perm p = todo.front();
    todo.pop_front();
    for (const auto& g : gens_) {
      Perm q = perm_compose(g, p);
      if (seen.insert(q).second) todo.push_back(q);
    }
  }
  elems_.assign(seen.begin(), seen.end());
}

PermGroup PermGroup::symmetric(std::size_t n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm t = perm_identity(n);
    std::swap(t[0], t[1]);
    gens.push_back(t);
    Perm c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint8_t>((i + 1) % n);
    gens.push_back(c);
  }
  return PermGroup(n, gens);
}

PermGroup PermGroup::cyclic(std::size_t n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint8_t>((i + 1) % n);
    gens.push_back(c);
  }
  return PermGroup(n, gens);
}

PermGroup PermGroup::trivial(std::size_t n) { return PermGroup(n, {}); }

PermGroup PermGroup::direct_product(const PermGroup& a, const PermGroup& b) {
  std::size_t n = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (const auto& g : a.generators()) {
    Perm p = perm_identity(n);
    for (std::size_t i = 0; i < a.degree(); ++i) p[i] = g[i];
    gens.push_back(p);
  }
  for (const auto& g : b.generators()) {
    Perm p = perm_identity(n);
    for (std::size_t i = 0; i < b.degree(); ++i)
      p[a.degree() + i] = static_cast<std::uint8_t>(a.degree() + g[i]);
    gens.push_back(p);
  }
  return PermGroup(n, gens);
}

PermGroup PermGroup::from_elements(std::size_t degree, const std::vector<Perm>& elems) {
  return PermGroup(degree, elems);
}

bool PermGroup::contains(const Perm& p) const { return std::binary_search(elems_.begin(), elems_.end(), p); }

std::size_t PermGroup::index_of(const Perm& p) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
  if (it == elems_.end() || *it != p) throw std::out_of_range("permutation not in group: " + perm_str(p));
  return static_cast<std::size_t>(it - elems_.begin());
}

PermGroup PermGroup::setwise_stabilizer_restricted(const std::vector<std::size_t>& b) const {
  std::vector<int> pos(degree_, -1);
  for (std::size_t k = 0; k < b.size(); ++k) pos[b[k]] = static_cast<int>(k);
  std::vector<Perm> restricted;
  for (const auto& g : elems_) {
    bool keeps = true;
    for (auto x : b)
      if (pos[g[x]] < 0) {
        keeps = false;
        break;
      }
    if (!keeps) continue;
    Perm r(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) r[k] = static_cast<std::uint8_t>(pos[g[b[k]]]);
    restricted.push_back(r);
  }
  return PermGroup(b.size(), restricted);
}

std::vector<PermGroup> PermGroup::subgroups() const {
  if (degree_ > 5) throw std::invalid_argument("subgroups: enumeration limited to degree <= 5");
  std::set<std::vector<Perm>> seen;
  std::vector<PermGroup> out;
  std::deque<PermGroup> todo{PermGroup::trivial(degree_)};
  seen.insert(todo.front().elements());
  while (!todo.empty()) {
    PermGroup h = todo.front();
    todo.pop_front();
    out.push_back(h);
    for (const auto& g : elems_) {
      if (h.contains(g)) continue;
      std::vector<Perm> gens = h.generators();
      gens.push_back(g);
      PermGroup k(degree_, gens);
      if (seen.insert(k.elements()).second) todo.push_back(k);
    }
  }
  return out;
}

std::string PermGroup::str() const {
  if (is_symmetric()) return "S" + std::to_string(degree_);
  std::string s = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ",";
    s += perm_str(gens_[i]);
  }
  return s + ">";
}

// ---- GroupAction ----

GroupAction::GroupAction(PermGroup group, FinSet carrier, const ActFn& act)
    : group_(std::move(group)), carrier_(std::move(carrier)) {
  const auto& el = group_.elements();
  table_.assign(el.size(), std::vector<std::uint32_t>(carrier_.size()));
  for (std::size_t g = 0; g < el.size(); ++g)
    for (std::size_t x = 0; x < carrier_.size(); ++x) {
      auto j = carrier_.index_of(act(el[g], carrier_[x]));
      if (!j) throw std::invalid_argument("GroupAction: image leaves the carrier");
      table_[g][x] = static_cast<std::uint32_t>(*j);
    }
  std::size_t id = group_.index_of(perm_identity(group_.degree()));
  for (std::size_t x = 0; x < carrier_.size(); ++x)
    if (table_[id][x] != x) throw std::invalid_argument("GroupAction: identity acts nontrivially");
  // checking against generators on the right is enough: every element is a word in them
  std::vector<std::size_t> gen_idx;
  for (const auto& s : group_.generators()) gen_idx.push_back(group_.index_of(s));
  for (std::size_t g = 0; g < el.size(); ++g)
    for (std::size_t h : gen_idx) {
      std::size_t gh = group_.index_of(perm_compose(el[g], el[h]));
      for (std::size_t x = 0; x < carrier_.size(); ++x)
        if (table_[gh][x] != table_[g][table_[h][x]])
          throw std::invalid_argument("GroupAction: act(gh,x) != act(g,act(h,x))");
    }
}

Element GroupAction::act(const Perm& g, const Element& x) const {
  return carrier_[table_[group_.index_of(g)][carrier_.index(x)]];
}

Element GroupAction::orbit_min(const Element& x) const {
  std::size_t xi = carrier_.index(x), best = xi;
  for (const auto& row : table_) best = std::min<std::size_t>(best, row[xi]);
  return carrier_[best];
}

std::vector<std::pair<Element, FinSet>> GroupAction::orbits() const {
  std::vector<char> done(carrier_.size(), 0);
  std::vector<std::pair<Element, FinSet>> out;
  for (std::size_t x = 0; x < carrier_.size(); ++x) {
    if (done[x]) continue;
    std::vector<Element> orb;
    for (const auto& row : table_)
      if (!done[row[x]]) {
        done[row[x]] = 1;
        orb.push_back(carrier_[row[x]]);
      }
    FinSet o(std::move(orb));
    out.emplace_back(o[0], o);  // x is the smallest unvisited, hence the orbit minimum
  }
  return out;
}

PermGroup GroupAction::stabilizer(const Element& x) const {
  auto xi = carrier_.index_of(x);
  if (!xi) throw std::invalid_argument("stabilizer: element not in carrier");
  std::vector<Perm> fix;
  for (std::size_t g = 0; g < table_.size(); ++g)
    if (table_[g][*xi] == *xi) fix.push_back(group_.elements()[g]);
  PermGroup s(group_.degree(), fix);
  std::size_t orbit = 0;
  std::vector<char> hit(carrier_.size(), 0);
  for (const auto& row : table_)
    if (!hit[row[*xi]]) {
      hit[row[*xi]] = 1;
      ++orbit;
    }
  if (orbit * s.order() != group_.order()) throw std::logic_error("orbit-stabilizer mismatch");
  return s;
}

Element perm_element(const Perm& p) {
  std::vector<Element> v;
  for (auto x : p) v.push_back(Element::atom(x));
  return Element::tuple(v);
}

Perm element_perm(const Element& e) {
  Perm p;
  for (const auto& c : e.children()) p.push_back(static_cast<std::uint8_t>(c.atom_value()));
  return p;
}

GroupAction regular_action(std::size_t n) {
  std::vector<Element> c;
  for (const auto& p : all_perms(n)) c.push_back(perm_element(p));
  return GroupAction(PermGroup::symmetric(n), FinSet(c), [](const Perm& g, const Element& x) {
    return perm_element(perm_compose(g, element_perm(x)));
  });
}

GroupAction trivial_action(std::size_t n, std::size_t points) {
  return GroupAction(PermGroup::symmetric(n), FinSet::range(points),
                     [](const Perm&, const Element& x) { return x; });
}

Element subset_element(const std::vector<std::size_t>& b) {
  std::vector<Element> v;
  for (auto i : b) v.push_back(Element::atom(i));
  return Element::set(v);
}

std::vector<std::size_t> subset_indices(const Element& s) {
  std::vector<std::size_t> out;
  for (const auto& m : s.members()) out.push_back(m.atom_value());
  return out;
}

}  // namespace fdiff
