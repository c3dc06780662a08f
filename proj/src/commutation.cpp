// delta against colimits over confluent shapes and connected limits
#include "fdiff/commutation.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace fdiff {

namespace {

void check_shape(const FunctorDiagram& d) {
  if (d.functors.size() != d.shape.objects() || d.maps.size() != d.shape.morphisms())
    throw std::invalid_argument("functor diagram: one functor per object and one map per morphism");
  for (std::size_t m = 0; m < d.shape.morphisms(); ++m) {
    if (d.shape.is_identity(m)) continue;
    const auto& t = d.maps[m];
    if (!t || t->src() != d.functors[d.shape.src(m)] || t->dst() != d.functors[d.shape.dst(m)])
      throw std::invalid_argument("functor diagram: map " + d.shape.morphism(m).name + " has the wrong endpoints");
  }
}

struct ColimCache {
  FunctorDiagram d;
  std::mutex mu;
  std::unordered_map<FinSet, Colimit, FinSetHash> at;
  Colimit get(const FinSet& x) {
    {
      std::lock_guard<std::mutex> lk(mu);
      auto it = at.find(x);
      if (it != at.end()) return it->second;
    }
    Colimit c = colimit(evaluate(d, x));
    std::lock_guard<std::mutex> lk(mu);
    return at.emplace(x, std::move(c)).first->second;
  }
};

std::string diagram_name(const FunctorDiagram& d, const std::string& op) {
  std::string s = op + "_" + d.shape.name() + "(";
  for (std::size_t a = 0; a < d.functors.size(); ++a) s += (a ? ", " : "") + d.functors[a]->name();
  return s + ")";
}

}  // namespace

Diagram evaluate(const FunctorDiagram& d, const FinSet& x) {
  check_shape(d);
  std::vector<FinSet> sets;
  for (const auto& f : d.functors) sets.push_back(f->eval(x));
  std::vector<FinFun> maps;
  for (std::size_t m = 0; m < d.shape.morphisms(); ++m)
    maps.push_back(d.shape.is_identity(m) ? FinFun::identity(sets[d.shape.src(m)]) : d.maps[m]->component(x));
  return Diagram(d.shape, sets, maps);
}

FunctorPtr colimit_functor(const FunctorDiagram& d) {
  check_shape(d);
  auto cache = std::make_shared<ColimCache>();
  cache->d = d;
  return make_functor(
      diagram_name(d, "colim"), [cache](const FinSet& x) { return cache->get(x).apex; },
      [cache](const FinFun& f, const Element& e) {
        const Element& p = e.inner();
        std::size_t a = p[0].atom_value();
        Element moved = cache->d.functors[a]->apply(f, p[1]);
        return cache->get(f.cod()).cocone[a](moved);
      });
}

FunctorPtr limit_functor(const FunctorDiagram& d) {
  check_shape(d);
  return make_functor(
      diagram_name(d, "lim"), [d](const FinSet& x) { return limit(evaluate(d, x)).apex; },
      [d](const FinFun& f, const Element& e) {
        std::vector<Element> v;
        for (std::size_t a = 0; a < d.functors.size(); ++a) v.push_back(d.functors[a]->apply(f, e[a]));
        return Element::tuple(v);
      });
}

FunctorDiagram delta_diagram(const FunctorDiagram& d) {
  check_shape(d);
  FunctorDiagram out{d.shape, {}, {}};
  for (const auto& f : d.functors) out.functors.push_back(delta(f));
  for (std::size_t m = 0; m < d.shape.morphisms(); ++m) {
    if (d.shape.is_identity(m)) {
      out.maps.push_back(nullptr);
      continue;
    }
    // rebuild on the shared delta functors so endpoints match by identity
    auto dt = delta_transf(d.maps[m]);
    auto t = d.maps[m];
    auto r = make_transf(out.functors[d.shape.src(m)], out.functors[d.shape.dst(m)],
                         [t](const FinSet& x, const Element& e) { return t->at(succ(x), e); }, dt->name());
    r->certify();
    out.maps.push_back(r);
  }
  return out;
}

namespace {

// certify the pieces, refusing anything that fails its check
bool certify_pieces(const FunctorDiagram& d, Report& r) {
  for (const auto& f : d.functors)
    if (!f->certified()) {
      Report t = check_taut(f);
      if (!t.passed()) {
        r.add(std::move(t));
        return false;
      }
    }
  for (std::size_t m = 0; m < d.shape.morphisms(); ++m)
    if (!d.shape.is_identity(m) && !d.maps[m]->certified()) {
      Report t = check_taut_transf(d.maps[m]);
      if (!t.passed()) {
        r.add(std::move(t));
        return false;
      }
    }
  return true;
}

}  // namespace

Report colimit_commutation_check(const FunctorDiagram& d, int K) {
  if (!is_confluent(d.shape))
    throw std::invalid_argument("colimit_commutation_check: shape " + d.shape.name() +
                                " is not confluent, so colimits need not commute with inverse images");
  Report r("delta commutes with colimits over " + d.shape.name());
  r.param("K", K);
  if (!certify_pieces(d, r)) return r;
  auto col = colimit_functor(d);
  Report taut = check_taut(col);
  bool ok = taut.passed();
  r.add(std::move(taut));
  if (!ok) return r;
  auto lhs = colimit_functor(delta_diagram(d));
  auto rhs = delta(col);
  auto big = std::make_shared<ColimCache>();
  big->d = d;
  // class of (I, a) with a in delta[G I](X) goes to the class of (I, a) in colim G(X+1)
  Family fam = [big](const FinSet& x, const Element& e) {
    const Element& p = e.inner();
    return big->get(succ(x)).cocone[p[0].atom_value()](p[1]);
  };
  TautOptions opt;
  opt.K = K;
  r.add(iso_witness(lhs, rhs, opt, fam));
  return r;
}

Report connected_limit_commutation_check(const FunctorDiagram& d, int K) {
  if (!d.shape.connected())
    throw std::invalid_argument("connected_limit_commutation_check: shape " + d.shape.name() + " is not connected");
  Report r("delta commutes with the limit over " + d.shape.name());
  r.param("K", K);
  if (!certify_pieces(d, r)) return r;
  auto lim = limit_functor(d);
  Report taut = check_taut(lim);
  bool ok = taut.passed();
  r.add(std::move(taut));
  if (!ok) return r;
  auto lhs = delta(lim);
  auto rhs = limit_functor(delta_diagram(d));
  TautOptions opt;
  opt.K = K;
  r.add(iso_witness(lhs, rhs, opt, Family([](const FinSet&, const Element& e) { return e; })));
  return r;
}

}  // namespace fdiff
