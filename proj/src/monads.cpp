// filters, powerset and ultrafilters on finite sets; symbolic class specs
#include <stdexcept>

#include "fdiff/classes.hpp"

namespace fdiff {

namespace {

// every filter on a finite set is principal, so <A> stands for {B : A subset of B}
Element image_set(const FinFun& f, const Element& s) {
  std::vector<Element> v;
  v.reserve(s.members().size());
  for (const auto& m : s.members()) v.push_back(f(m));
  return Element::set(std::move(v));
}

FunctorPtr subset_functor(const std::string& name, bool as_filter, std::size_t min_size, std::size_t max_size) {
  return make_functor(
      name,
      [as_filter, min_size, max_size](const FinSet& x) {
        std::vector<Element> out;
        for (const auto& s : all_subsets(x)) {
          if (s.size() < min_size || s.size() > max_size) continue;
          Element e = Element::set(s.elems());
          out.push_back(as_filter ? filter_element(e) : e);
        }
        return FinSet(std::move(out));
      },
      [as_filter](const FinFun& f, const Element& e) {
        return as_filter ? filter_element(image_set(f, e.inner())) : image_set(f, e);
      });
}

Element random_subset(const FinSet& y, std::mt19937_64& rng) {
  std::vector<Element> v;
  for (const auto& e : y)
    if (rng() & 1) v.push_back(e);
  return Element::set(std::move(v));
}

constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

}  // namespace

Element filter_element(const Element& generator_set) { return Element::tag("<>", generator_set); }

Monad filter_monad() {
  auto f = subset_functor("F", true, 0, kUnbounded);
  auto unit = make_transf(identity(), f, [](const FinSet&, const Element& x) { return filter_element(Element::set({x})); },
                          "filter unit");
  auto mult = make_transf(
      compose(f, f), f,
      [](const FinSet&, const Element& e) {
        std::vector<Element> u;
        for (const auto& g : e.inner().members())
          for (const auto& m : g.inner().members()) u.push_back(m);
        return filter_element(Element::set(std::move(u)));
      },
      "filter multiplication");
  return {"F", f, unit, mult,
          [](const FinSet& y, std::mt19937_64& rng) { return filter_element(random_subset(y, rng)); }};
}

Monad powerset_monad() {
  auto p = subset_functor("P", false, 0, kUnbounded);
  auto unit = make_transf(identity(), p, [](const FinSet&, const Element& x) { return Element::set({x}); },
                          "powerset unit");
  auto mult = make_transf(
      compose(p, p), p,
      [](const FinSet&, const Element& e) {
        std::vector<Element> u;
        for (const auto& s : e.members())
          for (const auto& m : s.members()) u.push_back(m);
        return Element::set(std::move(u));
      },
      "powerset union");
  return {"P", p, unit, mult, [](const FinSet& y, std::mt19937_64& rng) { return random_subset(y, rng); }};
}

FunctorPtr proper_filter_functor() { return subset_functor("F'", true, 1, kUnbounded); }
FunctorPtr ultrafilter_functor() { return subset_functor("beta", true, 1, 1); }

Report monad_laws(const Monad& m, const TautOptions& opt) {
  Report rep("monad laws for " + m.name);
  rep.param("K", opt.K);
  const auto& t = m.functor;
  bool unit_ok = true;
  for (int n = 0; n <= opt.K && unit_ok; ++n) {
    FinSet x = test_set(static_cast<std::size_t>(n));
    FinSet tx = t->eval(x);
    FinFun eta_x = m.unit->component(x);
    FinFun t_eta = t->map(eta_x);
    for (const auto& a : tx) {
      Element left = m.mult->at(x, m.unit->at(tx, a));
      Element right = m.mult->at(x, t_eta(a));
      if (left != a || right != a) {
        rep.check("unit laws", false, "|X|=" + std::to_string(n) + " at " + a.str());
        unit_ok = false;
        break;
      }
    }
  }
  if (unit_ok) rep.check("unit laws", true, "exhaustive, |X| <= " + std::to_string(opt.K));

  // associativity: mu . T mu = mu . mu T on T^3 X
  bool assoc_ok = true;
  std::mt19937_64 rng(opt.seed);
  std::size_t tested = 0;
  for (int n = 0; n <= opt.K && assoc_ok; ++n) {
    FinSet x = test_set(static_cast<std::size_t>(n));
    FinSet tx = t->eval(x);
    FinSet ttx = t->eval(tx);
    FinFun mu_x = m.mult->component(x);
    auto one = [&](const Element& a) {
      ++tested;
      Element left = m.mult->at(x, t->apply(mu_x, a));
      Element right = m.mult->at(x, m.mult->at(tx, a));
      if (left != right) {
        rep.check("associativity", false, "|X|=" + std::to_string(n) + " at " + a.str());
        assoc_ok = false;
      }
    };
    if (n <= 2) {
      for (const auto& a : t->eval(ttx)) {
        one(a);
        if (!assoc_ok) break;
      }
    } else {
      for (int s = 0; s < opt.samples * 8 && assoc_ok; ++s) one(m.sample(ttx, rng));
    }
  }
  if (assoc_ok)
    rep.check("associativity", true,
              std::to_string(tested) + " elements of T^3 X (exhaustive |X| <= 2, sampled above)");
  return rep;
}

// ---------------- class specs ----------------

std::string describe(const MonadSpec& spec) {
  switch (spec.kind) {
    case MonadKind::Filter: return "F";
    case MonadKind::ProperFilter: return "F'";
    case MonadKind::Ultrafilter: return "beta";
    case MonadKind::Powerset: return "P";
  }
  return "?";
}

FunctorPtr realize(const ClassSpec& spec) {
  return std::visit(
      [](const auto& s) -> FunctorPtr {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PolySpec>) return poly_functor(s);
        else if constexpr (std::is_same_v<T, QuotPowerSpec>) return quot_power_functor(s);
        else if constexpr (std::is_same_v<T, SpeciesSpec>) return analytic_functor(s);
        else if constexpr (std::is_same_v<T, DirichletSpec>) return dirichlet_functor(s);
        else {
          switch (s.kind) {
            case MonadKind::Filter: return filter_monad().functor;
            case MonadKind::ProperFilter: return proper_filter_functor();
            case MonadKind::Ultrafilter: return ultrafilter_functor();
            case MonadKind::Powerset: return powerset_monad().functor;
          }
          throw std::logic_error("realize: unknown monad kind");
        }
      },
      spec);
}

std::string describe(const ClassSpec& spec) {
  return std::visit([](const auto& s) { return describe(s); }, spec);
}

std::string class_name(const ClassSpec& spec) {
  static const char* names[] = {"polynomial", "quotient-power", "analytic", "dirichlet", "monad"};
  return names[spec.index()];
}

}  // namespace fdiff
