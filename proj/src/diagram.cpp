// finite categories, set-valued diagrams, colimits and the confluence criterion
#include "fdiff/diagram.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fdiff {

// ---------------- FinCat ----------------

FinCat::FinCat(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
               std::vector<std::vector<int>> comp, std::vector<std::size_t> ids)
    : name_(std::move(name)), objects_(std::move(objects)), morphisms_(std::move(morphisms)),
      comp_(std::move(comp)), ids_(std::move(ids)) {
  const std::size_t n = objects_.size(), m = morphisms_.size();
  if (ids_.size() != n || comp_.size() != m) throw std::invalid_argument("FinCat " + name_ + ": table sizes");
  for (const auto& mo : morphisms_)
    if (mo.src >= n || mo.dst >= n) throw std::invalid_argument("FinCat " + name_ + ": morphism endpoint");
  for (std::size_t a = 0; a < n; ++a)
    if (src(ids_[a]) != a || dst(ids_[a]) != a) throw std::invalid_argument("FinCat " + name_ + ": identity endpoints");
  for (std::size_t g = 0; g < m; ++g) {
    if (comp_[g].size() != m) throw std::invalid_argument("FinCat " + name_ + ": table sizes");
    for (std::size_t f = 0; f < m; ++f) {
      bool composable = dst(f) == src(g);
      int h = comp_[g][f];
      if (composable != (h >= 0)) throw std::invalid_argument("FinCat " + name_ + ": composability mismatch");
      if (h >= 0 && (src(static_cast<std::size_t>(h)) != src(f) || dst(static_cast<std::size_t>(h)) != dst(g)))
        throw std::invalid_argument("FinCat " + name_ + ": composite has wrong endpoints");
    }
  }
  for (std::size_t f = 0; f < m; ++f)
    if (compose(ids_[dst(f)], f) != f || compose(f, ids_[src(f)]) != f)
      throw std::invalid_argument("FinCat " + name_ + ": identity law fails at " + morphisms_[f].name);
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      if (dst(f) != src(g)) continue;
      for (std::size_t h = 0; h < m; ++h)
        if (dst(g) == src(h) && compose(h, compose(g, f)) != compose(compose(h, g), f))
          throw std::invalid_argument("FinCat " + name_ + ": associativity fails");
    }
  hom_.assign(n * n, {});
  out_.assign(n, {});
  for (std::size_t f = 0; f < m; ++f) {
    hom_[src(f) * n + dst(f)].push_back(f);
    out_[src(f)].push_back(f);
  }
}

std::size_t FinCat::compose(std::size_t g, std::size_t f) const {
  int h = comp_.at(g).at(f);
  if (h < 0) throw std::invalid_argument("FinCat::compose: " + morphisms_[g].name + " o " + morphisms_[f].name);
  return static_cast<std::size_t>(h);
}

bool FinCat::connected() const {
  if (objects() == 0) return false;
  std::vector<std::size_t> parent(objects());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& mo : morphisms_) parent[find(mo.src)] = find(mo.dst);
  for (std::size_t a = 0; a < objects(); ++a)
    if (find(a) != find(0)) return false;
  return true;
}

FinCat FinCat::poset(const std::string& name, const std::vector<std::vector<char>>& leq) {
  const std::size_t n = leq.size();
  std::vector<std::string> objs;
  for (std::size_t a = 0; a < n; ++a) objs.push_back(std::to_string(a));
  std::vector<Morphism> ms;
  std::vector<std::vector<int>> at(n, std::vector<int>(n, -1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (leq[a][b]) {
        at[a][b] = static_cast<int>(ms.size());
        ms.push_back({a, b, a == b ? "id" + std::to_string(a) : std::to_string(a) + "<" + std::to_string(b)});
      }
  std::vector<std::vector<int>> comp(ms.size(), std::vector<int>(ms.size(), -1));
  for (std::size_t g = 0; g < ms.size(); ++g)
    for (std::size_t f = 0; f < ms.size(); ++f)
      if (ms[f].dst == ms[g].src) {
        int h = at[ms[f].src][ms[g].dst];
        if (h < 0) throw std::invalid_argument("poset " + name + ": order not transitive");
        comp[g][f] = h;
      }
  std::vector<std::size_t> ids;
  for (std::size_t a = 0; a < n; ++a) {
    if (at[a][a] < 0) throw std::invalid_argument("poset " + name + ": order not reflexive");
    ids.push_back(static_cast<std::size_t>(at[a][a]));
  }
  return FinCat(name, objs, ms, comp, ids);
}

FinCat FinCat::free_on_graph(const std::string& name, std::size_t objects,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::string> objs;
  std::vector<Morphism> ms;
  std::vector<std::size_t> ids;
  for (std::size_t a = 0; a < objects; ++a) {
    objs.push_back(std::string(1, static_cast<char>('a' + a)));
    ids.push_back(ms.size());
    ms.push_back({a, a, "id" + objs.back()});
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [s, t] = edges[e];
    if (s == t) throw std::invalid_argument("free_on_graph: loops generate infinite categories");
    ms.push_back({s, t, std::string(1, static_cast<char>('f' + e))});
  }
  std::vector<std::vector<int>> comp(ms.size(), std::vector<int>(ms.size(), -1));
  for (std::size_t g = 0; g < ms.size(); ++g)
    for (std::size_t f = 0; f < ms.size(); ++f) {
      if (ms[f].dst != ms[g].src) continue;
      bool fid = f < objects, gid = g < objects;
      if (!fid && !gid) throw std::invalid_argument("free_on_graph: composable edges are not supported");
      comp[g][f] = static_cast<int>(fid ? g : f);
    }
  return FinCat(name, objs, ms, comp, ids);
}

FinCat FinCat::discrete(std::size_t n) { return free_on_graph("discrete" + std::to_string(n), n, {}); }
FinCat FinCat::span() { return free_on_graph("span", 3, {{0, 1}, {0, 2}}); }
FinCat FinCat::cospan() { return free_on_graph("cospan", 3, {{0, 2}, {1, 2}}); }
FinCat FinCat::parallel_pair() { return free_on_graph("parallel", 2, {{0, 1}, {0, 1}}); }

FinCat FinCat::chain(std::size_t n) {
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) leq[i][j] = 1;
  return poset("chain" + std::to_string(n), leq);
}

FinCat FinCat::square() {
  // 0 < 1, 0 < 2, 1 < 3, 2 < 3
  std::vector<std::vector<char>> leq{{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}};
  return poset("square", leq);
}

FinCat FinCat::group(const PermGroup& g, const std::string& name) {
  const auto& el = g.elements();
  std::vector<Morphism> ms;
  for (const auto& p : el) ms.push_back({0, 0, perm_str(p)});
  std::vector<std::vector<int>> comp(el.size(), std::vector<int>(el.size(), -1));
  for (std::size_t a = 0; a < el.size(); ++a)
    for (std::size_t b = 0; b < el.size(); ++b) comp[a][b] = static_cast<int>(g.index_of(perm_compose(el[a], el[b])));
  return FinCat(name, {"*"}, ms, comp, {g.index_of(perm_identity(g.degree()))});
}

FinCat FinCat::cyclic_group(std::size_t n) { return group(PermGroup::cyclic(n), "Z" + std::to_string(n)); }

std::vector<FinCat> FinCat::library() {
  std::vector<std::vector<char>> vee{{1, 0, 1}, {0, 1, 1}, {0, 0, 1}};  // 0 < 2 > 1: a cospan poset
  std::vector<std::vector<char>> wedge{{1, 1, 1}, {0, 1, 0}, {0, 0, 1}};  // 1 > 0 < 2
  std::vector<std::vector<char>> top4{{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}};
  return {discrete(1), discrete(2), discrete(3), span(), cospan(), parallel_pair(), chain(2), chain(3),
          chain(4), square(), cyclic_group(2), cyclic_group(3), poset("vee", vee), poset("wedge", wedge),
          poset("three-to-top", top4)};
}

std::optional<std::pair<std::size_t, std::size_t>> confluence_failure(const FinCat& c) {
  for (std::size_t i = 0; i < c.objects(); ++i)
    for (auto a1 : c.out_of(i))
      for (auto a2 : c.out_of(i)) {
        bool found = false;
        for (std::size_t j = 0; j < c.objects() && !found; ++j)
          for (auto b1 : c.hom(c.dst(a1), j)) {
            for (auto b2 : c.hom(c.dst(a2), j))
              if (c.compose(b1, a1) == c.compose(b2, a2)) {
                found = true;
                break;
              }
            if (found) break;
          }
        if (!found) return std::make_pair(a1, a2);
      }
  return std::nullopt;
}

bool is_confluent(const FinCat& c) { return !confluence_failure(c).has_value(); }

// ---------------- diagrams ----------------

Diagram::Diagram(FinCat shape, std::vector<FinSet> sets, std::vector<FinFun> maps)
    : shape_(std::move(shape)), sets_(std::move(sets)), maps_(std::move(maps)) {
  if (sets_.size() != shape_.objects() || maps_.size() != shape_.morphisms())
    throw std::invalid_argument("Diagram: wrong number of sets or maps");
  for (std::size_t m = 0; m < maps_.size(); ++m) {
    if (maps_[m].dom() != sets_[shape_.src(m)] || maps_[m].cod() != sets_[shape_.dst(m)])
      throw std::invalid_argument("Diagram: map " + shape_.morphism(m).name + " has the wrong endpoints");
    if (shape_.is_identity(m) && maps_[m] != FinFun::identity(sets_[shape_.src(m)]))
      throw std::invalid_argument("Diagram: identity not sent to identity");
  }
  for (std::size_t f = 0; f < maps_.size(); ++f)
    for (std::size_t g = 0; g < maps_.size(); ++g)
      if (shape_.dst(f) == shape_.src(g) && fdiff::compose(maps_[g], maps_[f]) != maps_[shape_.compose(g, f)])
        throw std::invalid_argument("Diagram: composition not preserved");
}

Diagram Diagram::sub(const std::vector<FinSet>& subsets) const {
  if (subsets.size() != sets_.size()) throw std::invalid_argument("Diagram::sub: one subset per object");
  std::vector<FinFun> maps;
  for (std::size_t m = 0; m < maps_.size(); ++m) {
    const FinSet& s = subsets[shape_.src(m)];
    const FinSet& t = subsets[shape_.dst(m)];
    if (!s.subset_of(sets_[shape_.src(m)])) throw std::invalid_argument("Diagram::sub: not a subset");
    std::vector<Element> img;
    for (const auto& x : s) {
      Element y = maps_[m](x);
      if (!t.contains(y)) throw std::invalid_argument("Diagram::sub: not closed under " + shape_.morphism(m).name);
      img.push_back(y);
    }
    maps.push_back(FinFun::from_elements(s, t, img));
  }
  return Diagram(shape_, subsets, maps);
}

Diagram Diagram::closure(const std::vector<std::pair<std::size_t, Element>>& gens) const {
  std::vector<std::vector<Element>> v(sets_.size());
  for (const auto& [a, x] : gens)
    for (auto m : shape_.out_of(a)) v[shape_.dst(m)].push_back(maps_[m](x));
  std::vector<FinSet> subs;
  for (auto& e : v) subs.emplace_back(std::move(e));
  return sub(subs);
}

namespace {

// flat index of (object, element)
struct Flat {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  explicit Flat(const Diagram& d) {
    for (std::size_t a = 0; a < d.shape().objects(); ++a) {
      offset.push_back(total);
      total += d.at(a).size();
    }
  }
};

Element pair_rep(std::size_t a, const Element& x) { return Element::tuple({Element::atom(a), x}); }

Colimit colimit_from_labels(const Diagram& d, const Flat& fl, const std::vector<std::size_t>& label) {
  // least pair per class
  std::map<std::size_t, Element> least;
  for (std::size_t a = 0; a < d.shape().objects(); ++a)
    for (std::size_t i = 0; i < d.at(a).size(); ++i) {
      Element p = pair_rep(a, d.at(a)[i]);
      auto [it, fresh] = least.emplace(label[fl.offset[a] + i], p);
      if (!fresh && p < it->second) it->second = p;
    }
  std::vector<Element> apex;
  for (const auto& [l, p] : least) apex.push_back(Element::cls(p));
  Colimit c{FinSet(apex), {}};
  for (std::size_t a = 0; a < d.shape().objects(); ++a) {
    std::vector<Element> img;
    for (std::size_t i = 0; i < d.at(a).size(); ++i) img.push_back(Element::cls(least.at(label[fl.offset[a] + i])));
    c.cocone.push_back(FinFun::from_elements(d.at(a), c.apex, img));
  }
  return c;
}

}  // namespace

Colimit colimit(const Diagram& d) {
  Flat fl(d);
  std::vector<std::size_t> parent(fl.total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t m = 0; m < d.shape().morphisms(); ++m) {
    const FinFun& f = d.map(m);
    for (std::size_t i = 0; i < f.dom().size(); ++i)
      parent[find(fl.offset[d.shape().src(m)] + i)] = find(fl.offset[d.shape().dst(m)] + f.at_index(i));
  }
  std::vector<std::size_t> label(fl.total);
  for (std::size_t i = 0; i < fl.total; ++i) label[i] = find(i);
  return colimit_from_labels(d, fl, label);
}

Colimit colimit_length1(const Diagram& d) {
  Flat fl(d);
  const FinCat& c = d.shape();
  // related(p, q): some J and maps into J identify them
  std::vector<std::size_t> label(fl.total, static_cast<std::size_t>(-1));
  std::size_t next = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pts;
  for (std::size_t a = 0; a < c.objects(); ++a)
    for (std::size_t i = 0; i < d.at(a).size(); ++i) pts.emplace_back(a, i);
  auto related = [&](std::pair<std::size_t, std::size_t> p, std::pair<std::size_t, std::size_t> q) {
    for (std::size_t j = 0; j < c.objects(); ++j)
      for (auto b1 : c.hom(p.first, j))
        for (auto b2 : c.hom(q.first, j))
          if (d.map(b1).at_index(p.second) == d.map(b2).at_index(q.second)) return true;
    return false;
  };
  // transitive closure by BFS over the relation
  for (std::size_t s = 0; s < pts.size(); ++s) {
    if (label[s] != static_cast<std::size_t>(-1)) continue;
    std::deque<std::size_t> q{s};
    label[s] = next;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v = 0; v < pts.size(); ++v)
        if (label[v] == static_cast<std::size_t>(-1) && related(pts[u], pts[v])) {
          label[v] = next;
          q.push_back(v);
        }
    }
    ++next;
  }
  return colimit_from_labels(d, fl, label);
}

Report colimit_universality(const Diagram& d) {
  Report r("colimit of a diagram over " + d.shape().name());
  Colimit c = colimit(d);
  bool commutes = true;
  for (std::size_t m = 0; m < d.shape().morphisms() && commutes; ++m)
    if (fdiff::compose(c.cocone[d.shape().dst(m)], d.map(m)) != c.cocone[d.shape().src(m)]) {
      r.check("cocone commutes", false, "at " + d.shape().morphism(m).name);
      commutes = false;
    }
  if (commutes) r.check("cocone commutes", true);
  std::vector<char> hit(c.apex.size(), 0);
  for (const auto& f : c.cocone)
    for (std::size_t i = 0; i < f.dom().size(); ++i) hit[f.at_index(i)] = 1;
  r.check("cocone jointly surjective", std::all_of(hit.begin(), hit.end(), [](char h) { return h; }));
  // oracle: the quotient by the equivalence generated by single maps, via repeated relabelling
  Flat fl(d);
  std::vector<std::size_t> lab(fl.total);
  std::iota(lab.begin(), lab.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t m = 0; m < d.shape().morphisms(); ++m) {
      const FinFun& f = d.map(m);
      for (std::size_t i = 0; i < f.dom().size(); ++i) {
        auto& x = lab[fl.offset[d.shape().src(m)] + i];
        auto& y = lab[fl.offset[d.shape().dst(m)] + f.at_index(i)];
        if (x != y) {
          std::size_t lo = std::min(x, y), hi = std::max(x, y);
          for (auto& l : lab)
            if (l == hi) l = lo;
          changed = true;
        }
      }
    }
  }
  bool same = true;
  for (std::size_t a = 0; a < d.shape().objects() && same; ++a)
    for (std::size_t b = 0; b < d.shape().objects() && same; ++b)
      for (std::size_t i = 0; i < d.at(a).size() && same; ++i)
        for (std::size_t j = 0; j < d.at(b).size() && same; ++j) {
          bool eq_oracle = lab[fl.offset[a] + i] == lab[fl.offset[b] + j];
          bool eq_colim = c.cocone[a].at_index(i) == c.cocone[b].at_index(j);
          if (eq_oracle != eq_colim) {
            r.check("identifies exactly the zigzag-related pairs", false,
                    pair_rep(a, d.at(a)[i]).str() + " vs " + pair_rep(b, d.at(b)[j]).str());
            same = false;
          }
        }
  if (same) r.check("identifies exactly the zigzag-related pairs", true);
  return r;
}

Limit limit(const Diagram& d) {
  const FinCat& c = d.shape();
  std::vector<Element> fams;
  std::vector<std::size_t> idx(c.objects(), 0);
  bool empty = false;
  for (std::size_t a = 0; a < c.objects(); ++a) empty = empty || d.at(a).empty();
  if (!empty) {
    while (true) {
      bool ok = true;
      for (std::size_t m = 0; m < c.morphisms() && ok; ++m)
        ok = d.map(m).at_index(idx[c.src(m)]) == idx[c.dst(m)];
      if (ok) {
        std::vector<Element> v;
        for (std::size_t a = 0; a < c.objects(); ++a) v.push_back(d.at(a)[idx[a]]);
        fams.push_back(Element::tuple(v));
      }
      std::size_t a = 0;
      while (a < idx.size() && ++idx[a] == d.at(a).size()) idx[a++] = 0;
      if (a == idx.size()) break;
    }
  }
  Limit l{FinSet(fams), {}};
  for (std::size_t a = 0; a < c.objects(); ++a) {
    std::vector<Element> img;
    for (const auto& f : l.apex) img.push_back(f[a]);
    l.projections.push_back(FinFun::from_elements(l.apex, d.at(a), img));
  }
  return l;
}

DiagramMap diagram_map(const Diagram& src, const Diagram& dst, std::vector<FinFun> components) {
  const FinCat& c = src.shape();
  if (components.size() != c.objects()) throw std::invalid_argument("diagram_map: one component per object");
  for (std::size_t a = 0; a < c.objects(); ++a)
    if (components[a].dom() != src.at(a) || components[a].cod() != dst.at(a))
      throw std::invalid_argument("diagram_map: component endpoints");
  for (std::size_t m = 0; m < c.morphisms(); ++m)
    if (fdiff::compose(components[c.dst(m)], src.map(m)) != fdiff::compose(dst.map(m), components[c.src(m)]))
      throw std::invalid_argument("diagram_map: not natural at " + c.morphism(m).name);
  return {src, dst, std::move(components)};
}

FinFun colimit_map(const DiagramMap& t, const Colimit& cs, const Colimit& cd) {
  std::vector<Element> img;
  for (const auto& cls : cs.apex) {
    const Element& p = cls.inner();
    std::size_t a = p[0].atom_value();
    img.push_back(cd.cocone[a](t.components[a](p[1])));
  }
  return FinFun::from_elements(cs.apex, cd.apex, img);
}

Diagram inverse_image(const DiagramMap& t, const Diagram& sub) {
  std::vector<FinSet> subs;
  for (std::size_t a = 0; a < t.src.shape().objects(); ++a) subs.push_back(fdiff::inverse_image(t.components[a], sub.at(a)));
  return t.src.sub(subs);
}

Diagram sum_of_representables(const FinCat& c, const std::vector<std::size_t>& objs) {
  std::vector<FinSet> sets;
  for (std::size_t b = 0; b < c.objects(); ++b) {
    std::vector<Element> v;
    for (std::size_t i = 0; i < objs.size(); ++i)
      for (auto g : c.hom(objs[i], b)) v.push_back(sum_element(i, Element::atom(g)));
    sets.emplace_back(v);
  }
  std::vector<FinFun> maps;
  for (std::size_t m = 0; m < c.morphisms(); ++m) {
    std::vector<Element> img;
    for (const auto& e : sets[c.src(m)])
      img.push_back(sum_element(sum_index(e), Element::atom(c.compose(m, e.inner().atom_value()))));
    maps.push_back(FinFun::from_elements(sets[c.src(m)], sets[c.dst(m)], img));
  }
  return Diagram(c, sets, maps);
}

Diagram representable(const FinCat& c, std::size_t a) { return sum_of_representables(c, {a}); }

DiagramMap yoneda_map(const FinCat& c, const std::vector<std::size_t>& objs_src,
                      const std::vector<std::size_t>& objs_dst,
                      const std::vector<std::pair<std::size_t, std::size_t>>& yoneda) {
  if (yoneda.size() != objs_src.size()) throw std::invalid_argument("yoneda_map: one element per source summand");
  for (std::size_t i = 0; i < yoneda.size(); ++i) {
    auto [b, mu] = yoneda[i];
    if (b >= objs_dst.size() || c.src(mu) != objs_dst[b] || c.dst(mu) != objs_src[i])
      throw std::invalid_argument("yoneda_map: element " + std::to_string(i) + " has the wrong type");
  }
  Diagram s = sum_of_representables(c, objs_src), d = sum_of_representables(c, objs_dst);
  std::vector<FinFun> comps;
  for (std::size_t a = 0; a < c.objects(); ++a) {
    std::vector<Element> img;
    for (const auto& e : s.at(a)) {
      auto [b, mu] = yoneda[sum_index(e)];
      img.push_back(sum_element(b, Element::atom(c.compose(e.inner().atom_value(), mu))));
    }
    comps.push_back(FinFun::from_elements(s.at(a), d.at(a), img));
  }
  return diagram_map(s, d, comps);
}

namespace {

// the inclusion of a subdiagram, as a map of diagrams
DiagramMap inclusion_map(const Diagram& sub, const Diagram& full) {
  std::vector<FinFun> comps;
  for (std::size_t a = 0; a < full.shape().objects(); ++a) comps.push_back(FinFun::inclusion(sub.at(a), full.at(a)));
  return {sub, full, comps};
}

}  // namespace

Report commutation_trial(const DiagramMap& t, const Diagram& g0) {
  Report r("colimit of an inverse image over " + t.src.shape().name());
  Diagram phi0 = inverse_image(t, g0);
  Colimit c_phi = colimit(t.src), c_gamma = colimit(t.dst), c_phi0 = colimit(phi0), c_g0 = colimit(g0);
  FinFun ct = colimit_map(t, c_phi, c_gamma);
  FinFun in_g = colimit_map(inclusion_map(g0, t.dst), c_g0, c_gamma);
  FinFun in_phi = colimit_map(inclusion_map(phi0, t.src), c_phi0, c_phi);
  FinSet target = fdiff::inverse_image(ct, in_g.image());
  r.param("colim_phi0", static_cast<std::int64_t>(c_phi0.apex.size()));
  r.param("inverse_image", static_cast<std::int64_t>(target.size()));
  bool ok = in_phi.injective() && in_phi.image() == target;
  r.check("colim t^-1(G0) -> (colim t)^-1(colim G0) bijective", ok,
          std::to_string(c_phi0.apex.size()) + " vs " + std::to_string(target.size()));
  return r;
}

Report confluent_colimit_properties(const Diagram& d, const Diagram& d0) {
  Report r("confluent colimit properties over " + d.shape().name());
  Colimit full = colimit(d), one = colimit_length1(d);
  r.check("length-1 zigzags give the same classes", full.apex == one.apex && full.cocone == one.cocone);
  Colimit c0 = colimit(d0);
  FinFun in = colimit_map(inclusion_map(d0, d), c0, full);
  // classes of the big colimit that meet the subdiagram
  std::vector<Element> meet;
  for (std::size_t a = 0; a < d.shape().objects(); ++a)
    for (const auto& x : d0.at(a)) meet.push_back(full.cocone[a](x));
  r.check("colim of the subdiagram embeds", in.injective());
  r.check("image is the set of classes meeting the subdiagram", in.image() == FinSet(meet));
  return r;
}

SpanCounterexample span_counterexample(const FinCat& c, std::size_t alpha1, std::size_t alpha2) {
  SpanCounterexample out;
  out.report = Report("representable counterexample on " + c.name());
  std::size_t i = c.src(alpha1), i1 = c.dst(alpha1), i2 = c.dst(alpha2);
  if (c.src(alpha2) != i) throw std::invalid_argument("span_counterexample: the two maps need a common source");
  // t : C(I1, -) -> C(I, -), precomposition with alpha1; G0 generated by alpha2
  DiagramMap t = yoneda_map(c, {i1}, {i}, {{0, alpha1}});
  Diagram g0 = t.dst.closure({{i2, sum_element(0, Element::atom(alpha2))}});
  Report trial = commutation_trial(t, g0);
  Diagram phi0 = inverse_image(t, g0);
  out.colim_phi0 = colimit(phi0).apex.size();
  Colimit cs = colimit(t.src), cd = colimit(t.dst), c0 = colimit(g0);
  FinFun ct = colimit_map(t, cs, cd);
  FinFun in_g = colimit_map(inclusion_map(g0, t.dst), c0, cd);
  out.inverse_of_colim = fdiff::inverse_image(ct, in_g.image()).size();
  out.report.param("alpha1", c.morphism(alpha1).name);
  out.report.param("alpha2", c.morphism(alpha2).name);
  out.report.param("colim_phi0", static_cast<std::int64_t>(out.colim_phi0));
  out.report.param("inverse_of_colim", static_cast<std::int64_t>(out.inverse_of_colim));
  out.report.note("colim Phi0 = " + std::to_string(out.colim_phi0) + ", (colim t)^-1(colim G0) = " +
                  std::to_string(out.inverse_of_colim));
  return out;
}

Report check_colimit_commutes_with_inverse_images(const FinCat& c, int trials, std::uint64_t seed) {
  Report r("colimits and inverse images over " + c.name());
  bool confl = is_confluent(c);
  r.param("confluent", confl ? "yes" : "no");
  r.param("trials", trials);
  r.param("seed", static_cast<std::int64_t>(seed));
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  int commuted = 0, failed = 0;
  std::string first_fail;
  for (int k = 0; k < trials; ++k) {
    std::vector<std::size_t> src, dst;
    std::size_t ns = 1 + pick(3), nd = 1 + pick(3);
    for (std::size_t i = 0; i < nd; ++i) dst.push_back(pick(c.objects()));
    std::vector<std::pair<std::size_t, std::size_t>> y;
    for (std::size_t i = 0; i < ns; ++i) {
      // a source summand at an object reachable from some target summand
      std::size_t b = pick(nd);
      const auto& outs = c.out_of(dst[b]);
      std::size_t mu = outs[pick(outs.size())];
      src.push_back(c.dst(mu));
      y.emplace_back(b, mu);
    }
    DiagramMap t = yoneda_map(c, src, dst, y);
    std::vector<std::pair<std::size_t, Element>> gens;
    std::size_t ng = pick(3);
    for (std::size_t g = 0; g < ng; ++g) {
      std::size_t a = pick(c.objects());
      if (t.dst.at(a).empty()) continue;
      gens.emplace_back(a, t.dst.at(a)[pick(t.dst.at(a).size())]);
    }
    Report tr = commutation_trial(t, t.dst.closure(gens));
    if (tr.passed()) {
      ++commuted;
    } else {
      ++failed;
      if (first_fail.empty()) first_fail = tr.checks().front().detail;
    }
  }
  r.param("commuted", commuted);
  r.param("failed", failed);
  if (confl) {
    r.check("every random trial commutes", failed == 0,
            failed ? first_fail : std::to_string(commuted) + " trials");
  } else {
    auto span = confluence_failure(c);
    SpanCounterexample ce = span_counterexample(c, span->first, span->second);
    bool fires = ce.colim_phi0 != ce.inverse_of_colim;
    r.check("representable counterexample fires", fires, ce.report.notes().front());
    r.add(std::move(ce.report));
  }
  return r;
}

// ---------------- pi_0 ----------------

Pi0 pi0(const FunctorPtr& f, int maxk) {
  FinSet one = FinSet::range(1);
  Pi0 out{f->eval(one), {}, Report("components of " + f->name())};
  out.report.param("maxk", maxk);
  auto bang = [one](const FinSet& x) { return FinFun(x, one, std::vector<std::uint32_t>(x.size(), 0)); };
  for (std::size_t i = 0; i < out.index.size(); ++i) {
    Element label = out.index[i];
    out.components.push_back(make_functor(
        f->name() + "_" + label.str(),
        [f, label, bang](const FinSet& x) {
          FinFun p = f->map(bang(x));
          std::vector<Element> v;
          for (std::size_t k = 0; k < p.dom().size(); ++k)
            if (p.image_of_index(k) == label) v.push_back(p.dom()[k]);
          return FinSet::from_sorted(std::move(v));
        },
        [f](const FinFun& g, const Element& e) { return f->apply(g, e); }));
  }
  bool ok = true;
  for (int k = 0; k <= maxk && ok; ++k) {
    FinSet x = test_set(static_cast<std::size_t>(k));
    std::vector<Element> all;
    for (const auto& c : out.components)
      for (const auto& e : c->eval(x)) all.push_back(e);
    std::size_t total = all.size();
    if (FinSet(all) != f->eval(x) || total != f->eval(x).size()) {
      out.report.check("components partition F(X)", false, "|X| = " + std::to_string(k));
      ok = false;
    }
  }
  if (ok) out.report.check("components partition F(X)", true, "|X| <= " + std::to_string(maxk));
  return out;
}

}  // namespace fdiff
