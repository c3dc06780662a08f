// the lax chain rule, the functor on pairs it makes monoidal, and the induced monad
#include "fdiff/chain.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace fdiff {

namespace {

void require_certified(const FunctorPtr& f, const char* who) {
  if (!f->certified()) throw NotTautError(std::string(who) + ": " + f->name() + " has no tautness certificate");
}

FunctorPtr verified(FunctorPtr f) {
  if (!f->certified()) {
    Report r = check_taut(f);
    if (!r.passed()) throw NotTautError(f->name() + " failed the tautness check: " + r.first_witness());
  }
  return f;
}

FunctorPtr certified_composite(const FunctorPtr& g, const FunctorPtr& f) { return verified(compose(g, f)); }
FunctorPtr certified_identity() { return verified(identity()); }

std::string sizes(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

}  // namespace

FinFun phi(const FunctorPtr& f, const FinSet& x, const Element& point) {
  const FinSet& fx = f->eval(x);
  FinSet dom = succ(fx);
  FinFun fj = f->map(succ_inclusion(x));
  Element star = fresh(fx);
  std::vector<Element> img;
  img.reserve(dom.size());
  for (const auto& e : dom) img.push_back(e == star ? point : fj(e));
  return FinFun::from_elements(dom, fj.cod(), img);
}

Element gamma_at(const FunctorPtr& f, const FunctorPtr& g, const FinSet& x, const Element& y, const Element& xe) {
  return g->apply(phi(f, x, xe), y);
}

GammaWitness gamma(const FunctorPtr& f, const FunctorPtr& g) {
  require_certified(f, "gamma");
  require_certified(g, "gamma");
  GammaWitness w{f, g, nullptr, nullptr, nullptr};
  auto gf = certified_composite(g, f);
  auto dgf = certified_composite(delta(g), f);
  w.lhs = product({dgf, delta(f)}, "(delta(" + g->name() + ") o " + f->name() + ") x delta(" + f->name() + ")");
  verified(w.lhs);
  w.rhs = delta(gf);
  w.gamma = make_transf(
      w.lhs, w.rhs, [f, g](const FinSet& x, const Element& e) { return gamma_at(f, g, x, e[0], e[1]); },
      "gamma[" + g->name() + ", " + f->name() + "]");
  return w;
}

Report gamma_check(const GammaWitness& w, const TautOptions& opt) {
  Report r("gamma " + w.g->name() + " after " + w.f->name());
  r.param("K", opt.K);
  bool contained = true, injective = true, disjoint = true;
  for (int k = 0; k <= opt.K; ++k) {
    FinSet x = test_set(k);
    const FinSet& lhs = w.lhs->eval(x);
    const FinSet& rhs = w.rhs->eval(x);
    std::unordered_map<Element, Element> owner;  // image -> the x it came from
    std::unordered_map<Element, Element> source;
    for (const auto& e : lhs) {
      Element v = gamma_at(w.f, w.g, x, e[0], e[1]);
      if (!rhs.contains(v)) {
        if (contained) r.witness("|X|=" + std::to_string(k) + ": gamma" + e.str() + " = " + v.str() +
                                 " lies in the image of G F(j)");
        contained = false;
        continue;
      }
      auto [it, fresh_image] = source.emplace(v, e);
      if (!fresh_image) {
        if (injective) r.witness("|X|=" + std::to_string(k) + ": " + it->second.str() + " and " + e.str() +
                                 " both map to " + v.str());
        injective = false;
      }
      auto [ot, fresh_owner] = owner.emplace(v, e[1]);
      if (!fresh_owner && ot->second != e[1]) {
        if (disjoint) r.witness("images for x = " + ot->second.str() + " and x = " + e[1].str() + " meet");
        disjoint = false;
      }
    }
    r.param("|X|=" + std::to_string(k) + " lhs/rhs", sizes(lhs.size(), rhs.size()));
  }
  r.check("lands in delta[G o F]", contained);
  r.check("injective", injective);
  r.check("images for distinct x are disjoint", disjoint);
  r.add(check_natural(w.gamma, opt));
  r.add(check_taut_transf(w.gamma, opt));
  return r;
}

std::vector<std::int64_t> interpolate(const std::vector<std::uint64_t>& values) {
  const std::size_t n = values.size();
  if (n == 0) return {0};
  // forward differences at 0
  std::vector<std::int64_t> d(values.begin(), values.end()), diffs;
  for (std::size_t i = 0; i < n; ++i) {
    diffs.push_back(d[0]);
    for (std::size_t j = 0; j + 1 < d.size(); ++j) d[j] = d[j + 1] - d[j];
    d.pop_back();
  }
  // sum_i diffs[i] * k(k-1)...(k-i+1) / i!, over the common denominator (n-1)!
  const std::int64_t den = static_cast<std::int64_t>(factorial(n - 1));
  std::vector<std::int64_t> num(n, 0), falling{1};  // falling factorial, lowest degree first
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t scale = den / static_cast<std::int64_t>(factorial(i));
    for (std::size_t j = 0; j < falling.size(); ++j) num[j] += diffs[i] * scale * falling[j];
    std::vector<std::int64_t> next(falling.size() + 1, 0);
    for (std::size_t j = 0; j < falling.size(); ++j) {
      next[j + 1] += falling[j];
      next[j] -= static_cast<std::int64_t>(i) * falling[j];
    }
    falling = std::move(next);
  }
  std::vector<std::int64_t> out;
  for (std::size_t j = n; j-- > 0;) {
    if (num[j] % den != 0) throw std::domain_error("interpolant has a non-integer coefficient");
    if (out.empty() && num[j] == 0 && j > 0) continue;
    out.push_back(num[j] / den);
  }
  return out;
}

std::string poly_string(const std::vector<std::int64_t>& c) {
  std::string s;
  const std::size_t deg = c.size() - 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t v = c[i];
    std::size_t p = deg - i;
    if (v == 0 && !(c.size() == 1)) continue;
    std::int64_t a = v < 0 ? -v : v;
    if (!s.empty()) s += v < 0 ? " - " : " + ";
    else if (v < 0) s += "-";
    if (a != 1 || p == 0) s += std::to_string(a);
    if (p >= 1) s += "X";
    if (p >= 2) s += "^" + std::to_string(p);
  }
  return s.empty() ? "0" : s;
}

ChainComparison chain_rule_comparison(const FunctorPtr& f, const FunctorPtr& g, int kmax) {
  ChainComparison c;
  GammaWitness w = gamma(f, g);
  Report& r = c.report;
  r = Report("chain-rule comparison " + g->name() + " after " + f->name());
  bool inclusion = true;
  for (int k = 0; k <= kmax; ++k) {
    FinSet x = test_set(k);
    c.lhs_counts.push_back(w.lhs->eval(x).size());
    c.rhs_counts.push_back(w.rhs->eval(x).size());
    r.param("k=" + std::to_string(k), sizes(c.lhs_counts.back(), c.rhs_counts.back()));
    if (c.lhs_counts.back() > c.rhs_counts.back()) {
      inclusion = false;
      r.witness("at k=" + std::to_string(k) + " the source is larger than the target");
    }
  }
  r.check("source fits in target at every k", inclusion);
  try {
    c.lhs_coeffs = interpolate(c.lhs_counts);
    c.rhs_coeffs = interpolate(c.rhs_counts);
    r.param("source polynomial", poly_string(c.lhs_coeffs));
    r.param("target polynomial", poly_string(c.rhs_coeffs));
    if (c.lhs_coeffs != c.rhs_coeffs) r.note("gamma is not surjective: the count polynomials differ");
  } catch (const std::domain_error& e) {
    r.note(std::string("counts are not polynomial of degree <= kmax: ") + e.what());
  }
  return c;
}

Report gamma_naturality_check(const TransfPtr& t, const TransfPtr& u, const TautOptions& opt) {
  Report r("gamma naturality in " + t->name() + ", " + u->name());
  for (const auto& tr : {t, u})
    if (!tr->certified()) {
      Report tt = check_taut_transf(tr, opt);
      bool ok = tt.passed();
      r.add(std::move(tt));
      if (!ok) return r;
    }
  for (const auto& fn : {t->src(), t->dst(), u->src(), u->dst()})
    if (!fn->certified()) {
      Report ft = check_taut(fn, opt);
      bool ok = ft.passed();
      r.add(std::move(ft));
      if (!ok) return r;
    }
  const FunctorPtr &f = t->src(), &f2 = t->dst(), &g = u->src(), &g2 = u->dst();
  GammaWitness w = gamma(f, g), w2 = gamma(f2, g2);
  TransfPtr ut = horizontal(u, t);
  bool ok = true;
  std::size_t checked = 0;
  for (int k = 0; k <= opt.K && ok; ++k) {
    FinSet x = test_set(k), sx = succ(x);
    FinFun tx1 = succ_map(t->component(x));
    FinSet target = w2.rhs->eval(x);
    FinSet sfx = succ(f->eval(x));
    for (const auto& e : w.lhs->eval(x)) {
      Element left = ut->at(sx, gamma_at(f, g, x, e[0], e[1]));
      Element y2 = g2->apply(tx1, u->at(sfx, e[0]));
      Element x2 = t->at(sx, e[1]);
      Element right = gamma_at(f2, g2, x, y2, x2);
      ++checked;
      if (left != right || !target.contains(left)) {
        r.witness("|X|=" + std::to_string(k) + " at " + e.str() + ": " + left.str() + " vs " + right.str());
        ok = false;
        break;
      }
    }
  }
  r.param("elements", static_cast<std::int64_t>(checked));
  r.check("square commutes", ok);
  return r;
}

Report gamma_associativity_check(const FunctorPtr& f, const FunctorPtr& g, const FunctorPtr& h, int K,
                                 std::size_t max_triples) {
  Report r("gamma associativity " + h->name() + ", " + g->name() + ", " + f->name());
  for (const auto& fn : {f, g, h}) require_certified(fn, "gamma_associativity_check");
  auto gf = certified_composite(g, f);
  auto dh = delta(h), dg = delta(g), df = delta(f);
  r.param("max triples", static_cast<std::int64_t>(max_triples));
  bool ok = true;
  std::size_t checked = 0;
  for (int k = 0; k <= K && ok; ++k) {
    FinSet x = test_set(k);
    const FinSet& fx = f->eval(x);
    const FinSet& gfx = g->eval(fx);
    FinSet xs = df->eval(x), ys = dg->eval(fx);
    if (xs.size() * ys.size() == 0) continue;
    if (xs.size() * ys.size() > max_triples) {
      r.note("skipped |X|=" + std::to_string(k) + ": too many triples");
      continue;
    }
    FinSet zs = dh->eval(gfx);
    if (zs.size() * xs.size() * ys.size() > max_triples) {
      r.note("skipped |X|=" + std::to_string(k) + ": too many triples");
      continue;
    }
    std::vector<FinFun> phi_f, g_phi_f, phi_g;
    for (const auto& xe : xs) {
      phi_f.push_back(phi(f, x, xe));
      g_phi_f.push_back(g->map(phi_f.back()));
    }
    for (const auto& ye : ys) phi_g.push_back(phi(g, fx, ye));
    std::unordered_map<Element, FinFun> phi_gf;
    for (std::size_t iy = 0; iy < ys.size() && ok; ++iy)
      for (std::size_t ix = 0; ix < xs.size() && ok; ++ix) {
        Element w = g->apply(phi_f[ix], ys[iy]);
        auto it = phi_gf.find(w);
        if (it == phi_gf.end()) it = phi_gf.emplace(w, phi(gf, x, w)).first;
        for (const auto& z : zs) {
          Element left = h->apply(it->second, z);
          Element right = h->apply(g_phi_f[ix], h->apply(phi_g[iy], z));
          ++checked;
          if (left != right) {
            r.witness("|X|=" + std::to_string(k) + " at (" + z.str() + ", " + ys[iy].str() + ", " + xs[ix].str() +
                      "): " + left.str() + " vs " + right.str());
            ok = false;
            break;
          }
        }
      }
  }
  r.param("triples", static_cast<std::int64_t>(checked));
  r.check("associativity square commutes", ok);
  return r;
}

Report gamma_unit_checks(const FunctorPtr& f, int K) {
  Report r("gamma unit laws for " + f->name());
  auto id = certified_identity();
  GammaWitness outer = gamma(f, id), inner = gamma(id, f);
  bool outer_ok = true, inner_ok = true;
  for (int k = 0; k <= K; ++k) {
    FinSet x = test_set(k);
    FinFun a = outer.gamma->component(x), b = inner.gamma->component(x);
    // G = Id: (fresh, x) |-> x ; F = Id: (y, fresh) |-> y
    bool a_ok = a.bijective(), b_ok = b.bijective();
    for (std::size_t i = 0; i < a.dom().size(); ++i) a_ok = a_ok && a.image_of_index(i) == a.dom()[i][1];
    for (std::size_t i = 0; i < b.dom().size(); ++i) b_ok = b_ok && b.image_of_index(i) == b.dom()[i][0];
    if (!a_ok && outer_ok) r.witness("gamma[Id, F] at |X|=" + std::to_string(k) + " is not the projection iso");
    if (!b_ok && inner_ok) r.witness("gamma[F, Id] at |X|=" + std::to_string(k) + " is not the projection iso");
    outer_ok = outer_ok && a_ok;
    inner_ok = inner_ok && b_ok;
  }
  r.check("gamma[Id, F] is an iso", outer_ok);
  r.check("gamma[F, Id] is an iso", inner_ok);
  return r;
}

// ---------------- D ----------------

FinSet set_product(const FinSet& a, const FinSet& b) {
  std::vector<Element> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(Element::tuple({x, y}));
  return FinSet::from_sorted(std::move(out));
}

TangentD::TangentD(FunctorPtr f) : f_(std::move(f)), df_(delta(f_)) {}

SetPair TangentD::eval(const SetPair& p) const { return {f_->eval(p.a), set_product(df_->eval(p.a), p.b)}; }

FunPair TangentD::map(const FunPair& m) const {
  SetPair src = eval({m.a.dom(), m.b.dom()}), dst = eval({m.a.cod(), m.b.cod()});
  std::vector<Element> img;
  img.reserve(src.b.size());
  for (const auto& e : src.b) img.push_back(Element::tuple({df_->apply(m.a, e[0]), m.b(e[1])}));
  return {f_->map(m.a), FinFun::from_elements(src.b, dst.b, img)};
}

TangentD tangent_D(const FunctorPtr& f) { return TangentD(f); }

Report tangent_monoidal_check(const FunctorPtr& f, const FunctorPtr& g, int K) {
  Report r("D(" + g->name() + ") o D(" + f->name() + ") -> D(" + g->name() + " o " + f->name() + ")");
  require_certified(f, "tangent_monoidal_check");
  require_certified(g, "tangent_monoidal_check");
  TangentD df(f), dg(g), dgf(certified_composite(g, f));
  std::map<std::pair<int, int>, FinFun> comparison;
  bool first_ok = true, mono = true, natural = true;
  auto comp = [&](int a, int b) -> const FinFun& {
    auto it = comparison.find({a, b});
    if (it != comparison.end()) return it->second;
    SetPair p{test_set(a), test_set(b)};
    SetPair lhs = dg.eval(df.eval(p)), rhs = dgf.eval(p);
    if (lhs.a != rhs.a) {
      if (first_ok) r.witness("first coordinates differ at " + sizes(a, b));
      first_ok = false;
    }
    std::vector<Element> img;
    for (const auto& e : lhs.b) img.push_back(Element::tuple({gamma_at(f, g, p.a, e[0], e[1][0]), e[1][1]}));
    FinFun c = FinFun::from_elements(lhs.b, rhs.b, img);
    if (!c.injective()) {
      if (mono) r.witness("comparison not injective at " + sizes(a, b));
      mono = false;
    }
    return comparison.emplace(std::make_pair(a, b), c).first->second;
  };
  std::size_t squares = 0;
  for (int a = 0; a <= K; ++a)
    for (int a2 = 0; a2 <= K; ++a2)
      for (int b = 0; b <= K; ++b)
        for (int b2 = 0; b2 <= K; ++b2)
          for (const auto& fa : all_functions(test_set(a), test_set(a2)))
            for (const auto& fb : all_functions(test_set(b), test_set(b2))) {
              FunPair m{fa, fb};
              FinFun top = dg.map(df.map(m)).b, bottom = dgf.map(m).b;
              ++squares;
              if (compose(comp(a2, b2), top) != compose(bottom, comp(a, b))) {
                if (natural) r.witness("naturality fails for " + fa.str() + ", " + fb.str());
                natural = false;
              }
            }
  r.param("squares", static_cast<std::int64_t>(squares));
  r.check("first coordinates agree", first_ok);
  r.check("comparison injective", mono);
  r.check("comparison natural", natural);
  return r;
}

// ---------------- the monad on pairs ----------------

DMonad::DMonad(Monad m) : m_(std::move(m)), d_(m_.functor) {}

FunPair DMonad::unit(const SetPair& p) const {
  Element h = m_.unit->at(succ(p.a), fresh(p.a));
  SetPair dst = d_.eval(p);
  std::vector<Element> img;
  for (const auto& b : p.b) img.push_back(Element::tuple({h, b}));
  return {m_.unit->component(p.a), FinFun::from_elements(p.b, dst.b, img)};
}

FunPair DMonad::mult(const SetPair& p) const {
  SetPair mp = d_.eval(p);
  SetPair mmp = d_.eval(mp);
  FinSet sa = succ(p.a);
  std::vector<Element> img;
  img.reserve(mmp.b.size());
  for (const auto& e : mmp.b) {
    Element w = gamma_at(m_.functor, m_.functor, p.a, e[0], e[1][0]);
    img.push_back(Element::tuple({m_.mult->at(sa, w), e[1][1]}));
  }
  return {m_.mult->component(p.a), FinFun::from_elements(mmp.b, mp.b, img)};
}

namespace {

bool same_pair(const FunPair& x, const FunPair& y) { return x.a == y.a && x.b == y.b; }
FunPair compose_pair(const FunPair& g, const FunPair& f) { return {compose(g.a, f.a), compose(g.b, f.b)}; }
FunPair identity_pair(const SetPair& p) { return {FinFun::identity(p.a), FinFun::identity(p.b)}; }

}  // namespace

Report d_monad_laws(const Monad& m, int K) {
  Report r("D-monad laws for " + m.name);
  r.param("K", K);
  TautOptions opt;
  opt.K = K;
  opt.exhaustive = K;
  if (!m.functor->certified()) {
    Report ft = check_taut(m.functor);
    bool ok = ft.passed();
    r.add(std::move(ft));
    if (!ok) return r;
  }
  for (const auto& t : {m.unit, m.mult})
    if (!t->certified()) {
      Report tt = check_taut_transf(t, opt);
      bool ok = tt.passed();
      r.add(std::move(tt));
      if (!ok) return r;
    }
  r.add(monad_laws(m, opt));
  DMonad dm(m);
  const FunctorPtr& t = m.functor;
  auto dt = delta(t);

  // small sizes through the composed maps themselves
  bool direct_ok = true;
  for (int a = 0; a <= std::min(K, 1); ++a)
    for (int b = 0; b <= K; ++b) {
      SetPair p{test_set(a), test_set(b)};
      SetPair mp = dm.tangent().eval(p);
      FunPair mu = dm.mult(p);
      bool left = same_pair(compose_pair(mu, dm.unit(mp)), identity_pair(mp));
      bool right = same_pair(compose_pair(mu, dm.tangent().map(dm.unit(p))), identity_pair(mp));
      bool assoc =
          same_pair(compose_pair(mu, dm.mult(mp)), compose_pair(mu, dm.tangent().map(mu)));
      if (!(left && right && assoc)) {
        r.witness("laws fail through composed maps at " + sizes(a, b) + (left ? "" : " (left unit)") +
                  (right ? "" : " (right unit)") + (assoc ? "" : " (associativity)"));
        direct_ok = false;
      }
    }
  r.check("laws via composed maps at |A| <= 1", direct_ok);

  // all sizes through index tables of the second coordinate; B is carried along unchanged
  bool unit_ok = true, assoc_ok = true;
  std::size_t checked = 0;
  for (int a = 0; a <= K; ++a) {
    FinSet A = test_set(a), sa = succ(A);
    const FinSet& ta = t->eval(A);
    const FinSet& tta = t->eval(ta);
    FinSet sta = succ(ta);
    FinSet s1 = dt->eval(A), s2 = dt->eval(ta), s3 = dt->eval(tta);
    if (s1.empty()) continue;
    std::vector<FinFun> phi_a, phi_ta;
    for (const auto& x : s1) phi_a.push_back(phi(t, A, x));
    for (const auto& y : s2) phi_ta.push_back(phi(t, ta, y));
    auto m_a = [&](const Element& y, std::size_t ix) { return m.mult->at(sa, t->apply(phi_a[ix], y)); };
    // mA[y][x], mTA[z][y] as indices
    std::vector<std::uint32_t> ma(s2.size() * s1.size()), mta(s3.size() * s2.size());
    for (std::size_t iy = 0; iy < s2.size(); ++iy)
      for (std::size_t ix = 0; ix < s1.size(); ++ix)
        ma[iy * s1.size() + ix] = static_cast<std::uint32_t>(s1.index(m_a(s2[iy], ix)));
    for (std::size_t iz = 0; iz < s3.size(); ++iz)
      for (std::size_t iy = 0; iy < s2.size(); ++iy)
        mta[iz * s2.size() + iy] =
            static_cast<std::uint32_t>(s2.index(m.mult->at(sta, t->apply(phi_ta[iy], s3[iz]))));
    FinFun dmu = succ_map(m.mult->component(A)), deta = succ_map(m.unit->component(A));
    std::vector<std::uint32_t> dtmu(s3.size()), dteta(s1.size());
    for (std::size_t iz = 0; iz < s3.size(); ++iz) dtmu[iz] = static_cast<std::uint32_t>(s2.index(t->apply(dmu, s3[iz])));
    for (std::size_t ix = 0; ix < s1.size(); ++ix) dteta[ix] = static_cast<std::uint32_t>(s2.index(t->apply(deta, s1[ix])));
    std::size_t ea = s1.index(m.unit->at(sa, fresh(A))), eta_ta = s2.index(m.unit->at(sta, fresh(ta)));
    for (int b = 0; b <= K; ++b)
      for (int ib = 0; ib < b; ++ib) {
        for (std::size_t ix = 0; ix < s1.size(); ++ix) {
          if (ma[eta_ta * s1.size() + ix] != ix || ma[dteta[ix] * s1.size() + ea] != ix) {
            if (unit_ok) r.witness("unit law fails at |A|=" + std::to_string(a) + ", x = " + s1[ix].str());
            unit_ok = false;
          }
        }
        for (std::size_t iz = 0; iz < s3.size() && assoc_ok; ++iz)
          for (std::size_t iy = 0; iy < s2.size() && assoc_ok; ++iy)
            for (std::size_t ix = 0; ix < s1.size(); ++ix) {
              ++checked;
              auto lhs = ma[mta[iz * s2.size() + iy] * s1.size() + ix];
              auto rhs = ma[dtmu[iz] * s1.size() + ma[iy * s1.size() + ix]];
              if (lhs != rhs) {
                r.witness("associativity fails at |A|=" + std::to_string(a) + ": " + s3[iz].str() + ", " +
                          s2[iy].str() + ", " + s1[ix].str());
                assoc_ok = false;
                break;
              }
            }
      }
    r.param("|A|=" + std::to_string(a) + " sizes", std::to_string(s1.size()) + "/" + std::to_string(s2.size()) +
                                                       "/" + std::to_string(s3.size()));
  }
  r.param("associativity instances", static_cast<std::int64_t>(checked));
  r.check("unit laws on the second coordinate", unit_ok);
  r.check("associativity on the second coordinate", assoc_ok);
  return r;
}

// ---------------- splittings ----------------

namespace {

// first-occurrence relabelling of non-star values; star stays as `star`
std::vector<int> canonical(const std::vector<int>& t, int star, std::vector<int>* back) {
  std::vector<int> relabel(star + 1, -1), out(t.size());
  int next = 0;
  if (back) back->clear();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == star) {
      out[i] = star;
      continue;
    }
    if (relabel[t[i]] < 0) {
      relabel[t[i]] = next++;
      if (back) back->push_back(t[i]);
    }
    out[i] = relabel[t[i]];
  }
  return out;
}

}  // namespace

SplittingCount diagonal_retractions(std::size_t n, bool pointed) {
  SplittingCount c;
  c.n = n;
  c.pointed = pointed;
  const int star = static_cast<int>(n);
  const int alphabet = static_cast<int>(n) + (pointed ? 1 : 0);

  // patterns and their output options (a canonical value or star)
  std::map<std::vector<int>, std::size_t> index;
  std::vector<std::vector<int>> patterns;
  std::vector<int> t(n, 0);
  while (true) {
    auto p = canonical(t, star, nullptr);
    if (!index.count(p)) {
      index.emplace(p, patterns.size());
      patterns.push_back(p);
    }
    std::size_t i = 0;
    while (i < n && ++t[i] == alphabet) t[i++] = 0;
    if (i == n) break;
  }
  std::vector<std::vector<int>> options(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    int blocks = 0;
    for (int v : patterns[i])
      if (v != star) blocks = std::max(blocks, v + 1);
    if (pointed) options[i].push_back(star);
    for (int v = 0; v < blocks; ++v) options[i].push_back(v);
  }
  c.patterns = patterns.size();
  c.candidates = 1;
  for (const auto& o : options) c.candidates *= o.size();

  // maps of the n-point set, star fixed
  std::vector<std::vector<int>> maps;
  std::vector<int> f(n, 0);
  while (true) {
    maps.push_back(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == static_cast<int>(n)) f[i++] = 0;
    if (i == n) break;
  }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do perms.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));

  std::vector<std::size_t> choice(patterns.size(), 0);
  std::vector<int> back;
  auto evaluate = [&](const std::vector<int>& tuple) {
    auto p = canonical(tuple, star, &back);
    int o = options[index.at(p)][choice[index.at(p)]];
    return o == star ? star : back[o];
  };
  while (true) {
    bool ok = true;
    // retraction of the diagonal
    for (int v = 0; v < alphabet && ok; ++v) ok = evaluate(std::vector<int>(n, v)) == v;
    for (std::size_t ip = 0; ip < patterns.size() && ok; ++ip) {
      int rv = evaluate(patterns[ip]);
      for (const auto& m : maps) {
        std::vector<int> image(n);
        for (std::size_t i = 0; i < n; ++i) image[i] = patterns[ip][i] == star ? star : m[patterns[ip][i]];
        if (evaluate(image) != (rv == star ? star : m[rv])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      ++c.natural_retractions;
      bool inv = true;
      for (std::size_t ip = 0; ip < patterns.size() && inv; ++ip)
        for (const auto& s : perms) {
          std::vector<int> moved(n);
          for (std::size_t i = 0; i < n; ++i) moved[i] = patterns[ip][s[i]];
          if (evaluate(moved) != evaluate(patterns[ip])) {
            inv = false;
            break;
          }
        }
      if (inv) ++c.invariant;
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == options[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return c;
}

Report splitting_search(std::size_t n) {
  Report r("splittings of gamma for G = X^" + std::to_string(n));
  // gamma is diagonal on the summand indexed by a nonempty mask T, into |T| copies of delta[F]
  std::size_t canonical_total = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    SplittingCount s = diagonal_retractions(m, false);
    for (std::uint64_t i = 0; i < binomial(n, m); ++i) canonical_total *= s.natural_retractions;
    r.param("retractions of Y -> Y^" + std::to_string(m), static_cast<std::int64_t>(s.natural_retractions));
  }
  r.param("summand-wise splittings, any F", static_cast<std::int64_t>(canonical_total));
  SplittingCount p = diagonal_retractions(n, true);
  r.param("patterns of (X+1)^" + std::to_string(n), static_cast<std::int64_t>(p.patterns));
  r.param("candidates", static_cast<std::int64_t>(p.candidates));
  r.param("natural retractions of X+1 -> (X+1)^" + std::to_string(n), static_cast<std::int64_t>(p.natural_retractions));
  r.param("invariant under coordinate permutations", static_cast<std::int64_t>(p.invariant));
  r.note("delta[F] = X + 1 is the case F = X^[2]; permuting the factors of G permutes the coordinates");
  if (p.invariant == 0)
    r.note("no retraction survives the symmetries of G, so none is natural in G");
  return r;
}

}  // namespace fdiff
