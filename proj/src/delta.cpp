// the difference operator: operational, iterated, pointed, symbolic, product rules
#include "fdiff/delta.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace fdiff {

namespace {

void require_certified(const FunctorPtr& f, const char* who) {
  if (!f->certified())
    throw NotTautError(std::string(who) + ": " + f->name() +
                       " has no tautness certificate (run check_taut first; delta is undefined off taut functors)");
}

// elements of F(full) outside the images of F(sub -> full) for each sub
FinSet complement_of_images(const FunctorPtr& f, const FinSet& full, const std::vector<FinSet>& subs) {
  FinSet big = f->eval(full);
  std::vector<char> hit(big.size(), 0);
  for (const auto& s : subs) {
    FinFun m = f->map(FinFun::inclusion(s, full));
    for (std::size_t i = 0; i < m.dom().size(); ++i) hit[m.at_index(i)] = 1;
  }
  std::vector<Element> out;
  for (std::size_t i = 0; i < big.size(); ++i)
    if (!hit[i]) out.push_back(big[i]);
  return FinSet::from_sorted(std::move(out));
}

FinSet without(const FinSet& x, const Element& p) { return set_difference(x, FinSet({p})); }

// f extended by a fixed list of extra points, sent to the matching points of the codomain
FinFun extend(const FinFun& f, const FinSet& dom_full, const FinSet& cod_full, const std::vector<Element>& dom_pts,
              const std::vector<Element>& cod_pts) {
  std::vector<Element> img;
  img.reserve(dom_full.size());
  for (const auto& e : dom_full) {
    auto it = std::find(dom_pts.begin(), dom_pts.end(), e);
    img.push_back(it == dom_pts.end() ? f(e) : cod_pts[static_cast<std::size_t>(it - dom_pts.begin())]);
  }
  return FinFun::from_elements(dom_full, cod_full, img);
}

std::string paren(const std::string& s) {
  return s.size() > 2 && s.front() == '(' && s.back() == ')' ? s.substr(1, s.size() - 2) : s;
}

}  // namespace

std::optional<Element> preimage(const FinFun& m, const Element& y) {
  auto k = m.cod().index_of(y);
  if (!k) return std::nullopt;
  for (std::size_t i = 0; i < m.dom().size(); ++i)
    if (m.at_index(i) == *k) return m.dom()[i];
  return std::nullopt;
}

FunctorPtr delta(const FunctorPtr& f) {
  require_certified(f, "delta");
  auto d = make_functor(
      "delta(" + paren(f->name()) + ")",
      [f](const FinSet& x) { return complement_of_images(f, succ(x), {x}); },
      [f](const FinFun& g, const Element& e) { return f->apply(succ_map(g), e); });
  d->certify(kByConstruction, "delta of a certified functor");
  return d;
}

TransfPtr delta_transf(const TransfPtr& t) {
  if (!t->certified())
    throw NotTautError("delta_transf: " + t->name() +
                       " is not a certified taut transformation (run check_taut_transf first)");
  auto ds = delta(t->src()), dd = delta(t->dst());
  auto out = make_transf(
      ds, dd, [t](const FinSet& x, const Element& e) { return t->at(succ(x), e); }, "delta(" + t->name() + ")");
  out->certify();
  return out;
}

FunctorPtr iterated(const FunctorPtr& f, std::size_t n) {
  FunctorPtr cur = f;
  for (std::size_t i = 0; i < n; ++i) cur = delta(cur);
  return cur;
}

FunctorPtr d_n(const FunctorPtr& f, std::size_t n) {
  require_certified(f, "d_n");
  auto d = make_functor(
      "D_" + std::to_string(n) + "(" + paren(f->name()) + ")",
      [f, n](const FinSet& x) {
        FinSet full = succ_n(x, n);
        std::vector<FinSet> subs;
        for (const auto& p : fresh_chain(x, n)) subs.push_back(without(full, p));
        return complement_of_images(f, full, subs);
      },
      [f, n](const FinFun& g, const Element& e) {
        return f->apply(extend(g, succ_n(g.dom(), n), succ_n(g.cod(), n), fresh_chain(g.dom(), n),
                               fresh_chain(g.cod(), n)),
                        e);
      });
  d->certify(kByConstruction, "D_n of a certified functor");
  return d;
}

FunctorPtr d_pointed(const FunctorPtr& f, const FinSet& a) {
  require_certified(f, "d_pointed");
  std::vector<Element> pts;
  for (const auto& p : a) pts.push_back(pointed(p));
  auto d = make_functor(
      "D_" + a.str() + "(" + paren(f->name()) + ")",
      [f, a, pts](const FinSet& x) {
        FinSet full = plus_pointed(x, a);
        std::vector<FinSet> subs;
        for (const auto& p : pts) subs.push_back(without(full, p));
        return complement_of_images(f, full, subs);
      },
      [f, a, pts](const FinFun& g, const Element& e) {
        return f->apply(extend(g, plus_pointed(g.dom(), a), plus_pointed(g.cod(), a), pts, pts), e);
      });
  d->certify(kByConstruction, "D_A of a certified functor");
  return d;
}

Report counting_law(const FunctorPtr& f, int kmax) {
  Report r("counting law for " + f->name());
  r.param("kmax", kmax);
  auto d = delta(f);
  bool ok = true;
  for (int k = 0; k <= kmax && ok; ++k) {
    auto fk = f->eval(test_set(static_cast<std::size_t>(k))).size();
    auto fk1 = f->eval(test_set(static_cast<std::size_t>(k + 1))).size();
    auto dk = d->eval(test_set(static_cast<std::size_t>(k))).size();
    if (fk + dk != fk1) {
      r.check("|dF(k)| = |F(k+1)| - |F(k)|", false,
              "k = " + std::to_string(k) + ": " + std::to_string(dk) + " vs " + std::to_string(fk1) + " - " +
                  std::to_string(fk));
      ok = false;
    }
  }
  if (ok) r.check("|dF(k)| = |F(k+1)| - |F(k)|", true, "k <= " + std::to_string(kmax));
  return r;
}

Report coproduct_law(const FunctorPtr& f, int K) {
  Report r("F + delta F ~ F o S for " + f->name());
  auto lhs = sum({f, delta(f)});
  auto rhs = compose(f, successor());
  Family fam = [f](const FinSet& x, const Element& e) {
    if (sum_index(e) == 1) return e.inner();
    return f->map(succ_inclusion(x))(e.inner());
  };
  TautOptions opt;
  opt.K = K;
  r.add(iso_witness(lhs, rhs, opt, fam));
  return r;
}

Report iterated_vs_dn(const FunctorPtr& f, std::size_t n, int K) {
  Report r("delta^" + std::to_string(n) + " vs D_" + std::to_string(n) + " for " + f->name());
  r.param("K", K);
  auto it = iterated(f, n), dn = d_n(f, n);
  bool ok = true;
  for (int k = 0; k <= K && ok; ++k) {
    FinSet x = test_set(static_cast<std::size_t>(k));
    if (it->eval(x) != dn->eval(x)) {
      r.check("same elements", false, "|X| = " + std::to_string(k));
      ok = false;
    }
  }
  if (ok) r.check("same elements", true, "|X| <= " + std::to_string(K));
  bool arrows = true;
  for (int a = 0; a <= std::min(K, 2) && arrows; ++a)
    for (int b = 0; b <= std::min(K, 2) && arrows; ++b)
      for (const auto& g : all_functions(test_set(a), test_set(b)))
        for (const auto& e : it->eval(g.dom()))
          if (it->apply(g, e) != dn->apply(g, e)) {
            r.check("same arrow maps", false, g.str() + " at " + e.str());
            arrows = false;
            break;
          }
  if (arrows) r.check("same arrow maps", true, "all functions between sets of size <= 2");
  return r;
}

Report d_composition_check(const FunctorPtr& f, std::size_t a, std::size_t b, int K) {
  Report r("D_A o D_B ~ D_{A+B} for " + f->name() + ", |A| = " + std::to_string(a) + ", |B| = " + std::to_string(b));
  std::vector<Element> av, bv, all;
  for (std::size_t i = 0; i < a; ++i) av.push_back(sum_element(0, Element::atom(i)));
  for (std::size_t i = 0; i < b; ++i) bv.push_back(sum_element(1, Element::atom(i)));
  all = av;
  all.insert(all.end(), bv.begin(), bv.end());
  FinSet A(av), B(bv), AB(all);
  auto lhs = d_pointed(d_pointed(f, B), A);
  auto rhs = d_pointed(f, AB);
  // (X + A) + B and X + (A + B) are the same set once A, B are tagged apart
  TautOptions opt;
  opt.K = K;
  r.add(iso_witness(lhs, rhs, opt, Family([](const FinSet&, const Element& e) { return e; })));
  return r;
}

// ---------------- symbolic delta ----------------

namespace {

SymbolicDelta poly_delta(const PolySpec& s) {
  struct Key {
    std::size_t size, i;
    std::uint32_t mask;
  };
  std::vector<Key> keys;
  for (std::size_t i = 0; i < s.exponents.size(); ++i) {
    std::size_t n = s.exponents[i];
    if (n > 20) throw std::invalid_argument("symbolic delta: exponent too large");
    for (std::uint32_t m = 0; m + 1 < (1u << n); ++m) keys.push_back({static_cast<std::size_t>(__builtin_popcount(m)), i, m});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a.size, a.i, a.mask) < std::tie(b.size, b.i, b.mask);
  });
  PolySpec out;
  std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> where;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    out.exponents.push_back(keys[k].size);
    where[{keys[k].i, keys[k].mask}] = k;
  }
  Family fam = [where](const FinSet& x, const Element& e) {
    Element star = fresh(x);
    const Element& phi = e.inner();
    std::uint32_t mask = 0;
    std::vector<Element> rest;
    for (std::size_t k = 0; k < phi.arity(); ++k)
      if (phi[k] != star) {
        mask |= 1u << k;
        rest.push_back(phi[k]);
      }
    return sum_element(where.at({sum_index(e), mask}), Element::tuple(rest));
  };
  return {out, fam, "delta[X^A] = sum over proper S of X^S"};
}

std::vector<std::size_t> image_of(const Perm& p, const std::vector<std::size_t>& s) {
  std::vector<std::size_t> out;
  for (auto k : s) out.push_back(p[k]);
  std::sort(out.begin(), out.end());
  return out;
}

SymbolicDelta quot_delta(const QuotPowerSpec& s) {
  QuotPowerSpec out;
  // per source term: orbit representative -> output term
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> where(s.terms.size());
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    const auto& [n, g] = s.terms[i];
    std::set<std::vector<std::size_t>> reps;
    for (std::uint32_t m = 0; m + 1 < (1u << n); ++m) {
      std::vector<std::size_t> b;
      for (std::size_t k = 0; k < n; ++k)
        if (m >> k & 1) b.push_back(k);
      std::vector<std::size_t> best = b;
      for (const auto& p : g.elements()) best = std::min(best, image_of(p, b));
      reps.insert(best);
    }
    for (const auto& b : reps) {
      where[i][b] = out.terms.size();
      out.terms.emplace_back(b.size(), g.setwise_stabilizer_restricted(b));
    }
  }
  auto terms = s.terms;
  auto groups = out.terms;
  Family fam = [terms, groups, where](const FinSet& x, const Element& e) {
    Element star = fresh(x);
    std::size_t i = sum_index(e);
    const Element& t = e.inner().inner();
    const PermGroup& g = terms[i].second;
    std::vector<std::size_t> supp;
    for (std::size_t k = 0; k < t.arity(); ++k)
      if (t[k] != star) supp.push_back(k);
    // p with p(B) = supp for the least B in the orbit
    std::vector<std::size_t> best;
    const Perm* bp = nullptr;
    for (const auto& p : g.elements()) {
      std::vector<std::size_t> b;
      for (std::size_t k = 0; k < p.size(); ++k)
        if (std::binary_search(supp.begin(), supp.end(), static_cast<std::size_t>(p[k]))) b.push_back(k);
      if (!bp || b < best) {
        best = b;
        bp = &p;
      }
    }
    std::vector<Element> u;
    for (auto k : best) u.push_back(t[(*bp)[k]]);
    std::size_t o = where[i].at(best);
    return sum_element(o, Element::cls(quot_canonical(u, groups[o].second)));
  };
  return {out, fam, "delta[X^n/G] = sum over orbit representatives B of X^B/Stab(B)"};
}

// perms of S_n fixing the first k points
std::vector<Perm> tail_group(std::size_t n, std::size_t k) {
  std::vector<Perm> out;
  for (const auto& q : all_perms(n - k)) {
    Perm p = perm_identity(n);
    for (std::size_t j = 0; j < q.size(); ++j) p[k + j] = static_cast<std::uint8_t>(k + q[j]);
    out.push_back(p);
  }
  return out;
}

SymbolicDelta analytic_delta(const SpeciesSpec& s) {
  const std::size_t top = s.coeff.size();
  SpeciesSpec out;
  auto coeff = s.coeff;
  for (std::size_t k = 0; k + 1 < std::max<std::size_t>(top, 1); ++k) {
    std::vector<Element> carrier;
    for (std::size_t n = k + 1; n < top; ++n) {
      auto tg = tail_group(n, k);
      for (const auto& c : coeff[n].carrier()) {
        Element m = c;
        for (const auto& p : tg) m = std::min(m, coeff[n].act(p, c));
        carrier.push_back(sum_element(n, Element::cls(m)));
      }
    }
    out.coeff.emplace_back(PermGroup::symmetric(k), FinSet(carrier), [coeff, k](const Perm& tau, const Element& cc) {
      std::size_t n = sum_index(cc);
      Perm p = perm_identity(n);
      for (std::size_t j = 0; j < k; ++j) p[j] = tau[j];
      Element moved = coeff[n].act(p, cc.inner().inner());
      Element m = moved;
      for (const auto& q : tail_group(n, k)) m = std::min(m, coeff[n].act(q, moved));
      return sum_element(n, Element::cls(m));
    });
  }
  auto closed = out.coeff;
  Family fam = [coeff, closed](const FinSet& x, const Element& e) {
    Element star = fresh(x);
    std::size_t n = sum_index(e);
    const Element& rep = e.inner().inner();
    const Element& xs = rep[0];
    Perm sigma;
    std::vector<Element> y;
    for (std::size_t i = 0; i < n; ++i)
      if (xs[i] != star) {
        sigma.push_back(static_cast<std::uint8_t>(i));
        y.push_back(xs[i]);
      }
    std::size_t k = y.size();
    for (std::size_t i = 0; i < n; ++i)
      if (xs[i] == star) sigma.push_back(static_cast<std::uint8_t>(i));
    Element c = coeff[n].act(perm_inverse(sigma), rep[1]);
    Element m = c;
    for (const auto& q : tail_group(n, k)) m = std::min(m, coeff[n].act(q, c));
    return sum_element(k, species_canonical(closed[k], y, sum_element(n, Element::cls(m))));
  };
  return {out, fam, "delta[X^n (x) C] = sum over k < n of X^k (x) C/S_{n-k}"};
}

SymbolicDelta dirichlet_delta(const DirichletSpec& s) {
  DirichletSpec out;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> where;  // (term, l) -> output term
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    const auto& t = s.terms[i];
    const Lattice& l = t.lattice;
    if (t.coeff.empty()) continue;
    if (!t.normalized) {
      std::vector<Element> c;
      for (const auto& ci : t.coeff)
        for (std::size_t a = 0; a < l.size(); ++a)
          if (a != l.bottom()) c.push_back(Element::tuple({ci, l.element(a)}));
      if (c.empty()) continue;
      where[{i, 0}] = out.terms.size();
      out.terms.push_back({FinSet(c), l, false});
      continue;
    }
    for (std::size_t v = 0; v < l.size(); ++v) {
      std::vector<Element> c;
      for (const auto& ci : t.coeff)
        for (std::size_t a = 0; a < l.size(); ++a)
          if (a != l.bottom() && l.join(v, a) == l.top()) c.push_back(Element::tuple({ci, l.element(a)}));
      if (c.empty()) continue;
      Lattice d = l.down_set(v);
      if (v == l.top()) d.rename(l.name());
      where[{i, v}] = out.terms.size();
      out.terms.push_back({FinSet(c), d, true});
    }
  }
  auto terms = s.terms;
  Family fam = [terms, where](const FinSet& x, const Element& e) {
    std::size_t i = sum_index(e);
    const auto& t = terms[i];
    const Element& coef = e.inner()[0];
    const Element& phi = e.inner()[1];
    std::size_t p = succ(x).index(fresh(x));
    std::vector<Element> rest;
    std::size_t v = t.lattice.bottom();
    for (std::size_t k = 0; k < phi.arity(); ++k)
      if (k != p) {
        rest.push_back(phi[k]);
        v = t.lattice.join(v, t.lattice.index(phi[k]));
      }
    std::size_t o = where.at({i, t.normalized ? v : 0});
    return sum_element(o, Element::tuple({Element::tuple({coef, phi[p]}), Element::tuple(rest)}));
  };
  return {out, fam, "delta[L^X] = L_* x L^X; delta[L^[X]] = sum over l of C_l . D(l)^[X]"};
}

SymbolicDelta monad_delta(const MonadSpec& s) {
  auto drop = [](const FinSet& x, const Element& set) {
    Element star = fresh(x);
    std::vector<Element> v;
    for (const auto& m : set.members())
      if (m != star) v.push_back(m);
    return Element::set(std::move(v));
  };
  switch (s.kind) {
    case MonadKind::Filter:
    case MonadKind::ProperFilter:
      return {MonadSpec{MonadKind::Filter},
              [drop](const FinSet& x, const Element& e) { return filter_element(drop(x, e.inner())); },
              s.kind == MonadKind::Filter ? "delta[F] = F" : "delta[F'] = F"};
    case MonadKind::Powerset:
      return {MonadSpec{MonadKind::Powerset}, [drop](const FinSet& x, const Element& e) { return drop(x, e); },
              "delta[P] = P"};
    case MonadKind::Ultrafilter:
      return {PolySpec{{0}}, [](const FinSet&, const Element&) { return sum_element(0, Element::tuple({})); },
              "delta[beta] = 1"};
  }
  throw std::invalid_argument("symbolic delta: unknown monad kind");
}

}  // namespace

SymbolicDelta symbolic_delta(const ClassSpec& spec) {
  return std::visit(
      [](const auto& s) -> SymbolicDelta {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PolySpec>) return poly_delta(s);
        else if constexpr (std::is_same_v<T, QuotPowerSpec>) return quot_delta(s);
        else if constexpr (std::is_same_v<T, SpeciesSpec>) return analytic_delta(s);
        else if constexpr (std::is_same_v<T, DirichletSpec>) return dirichlet_delta(s);
        else return monad_delta(s);
      },
      spec);
}

Report verify_symbolic_delta(const ClassSpec& spec, int K) {
  auto f = realize(spec);
  Report r("symbolic delta of " + f->name() + " (" + class_name(spec) + ")");
  if (!f->certified()) {
    Report t = check_taut(f);
    bool ok = t.passed();
    r.add(std::move(t));
    if (!ok) return r;
  }
  SymbolicDelta sd = symbolic_delta(spec);
  r.param("closed_form", describe(sd.spec));
  r.note(sd.formula);
  TautOptions opt;
  opt.K = K;
  r.add(iso_witness(delta(f), realize(sd.spec), opt, sd.to_closed));
  return r;
}

// ---------------- product rules ----------------

FunctorPtr product_rule_rhs(const std::vector<FunctorPtr>& fs) {
  const std::size_t n = fs.size();
  std::vector<FunctorPtr> terms;
  for (std::uint32_t m = 0; m + 1 < (1u << n); ++m) {
    std::vector<FunctorPtr> factors;
    for (std::size_t i = 0; i < n; ++i) factors.push_back(m >> i & 1 ? fs[i] : delta(fs[i]));
    terms.push_back(product(factors));
  }
  return sum(terms);
}

Report finite_product_rule_check(const std::vector<FunctorPtr>& fs, int K) {
  Report r("product rule over " + std::to_string(fs.size()) + " factors");
  if (fs.empty() || fs.size() > 4) throw std::invalid_argument("finite_product_rule_check: 1 to 4 factors");
  for (const auto& f : fs) require_certified(f, "product rule");
  auto lhs_base = product(fs);
  Report taut = check_taut(lhs_base);
  if (!taut.passed()) {
    r.add(std::move(taut));
    return r;
  }
  auto lhs = delta(lhs_base);
  auto rhs = product_rule_rhs(fs);
  // grid partition: the coordinates already coming from X form the index set S
  Family fam = [fs](const FinSet& x, const Element& e) {
    std::uint32_t mask = 0;
    std::vector<Element> parts;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      auto pre = preimage(fs[i]->map(succ_inclusion(x)), e[i]);
      if (pre) {
        mask |= 1u << i;
        parts.push_back(*pre);
      } else {
        parts.push_back(e[i]);
      }
    }
    return sum_element(mask, Element::tuple(parts));
  };
  TautOptions opt;
  opt.K = K;
  r.param("summands", static_cast<std::int64_t>((1u << fs.size()) - 1));
  r.add(iso_witness(lhs, rhs, opt, fam));
  return r;
}

Report product_rule_check(const FunctorPtr& f, const FunctorPtr& g, int K) {
  return finite_product_rule_check({f, g}, K);
}

}  // namespace fdiff
