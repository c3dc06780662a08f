// soft species, Newton summation, iterated differences at 0, softening and the adjunction checks
#include "fdiff/newton.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>


namespace fdiff {

// ---------------- surjections ----------------

std::vector<Surjection> surjections(std::size_t m, std::size_t n) {
  std::vector<Surjection> out;
  if (m == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  if (n == 0 || n > m) return out;
  Surjection s(m, 0);
  while (true) {
    std::vector<char> hit(n, 0);
    for (auto v : s) hit[v] = 1;
    if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) out.push_back(s);
    std::size_t i = m;
    while (i > 0 && ++s[i - 1] == n) s[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::size_t surj_target(const Surjection& s) {
  return s.empty() ? 0 : static_cast<std::size_t>(*std::max_element(s.begin(), s.end())) + 1;
}

Surjection surj_compose(const Surjection& t, const Surjection& s) {
  Surjection out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = t.at(s[i]);
  return out;
}

FinFun surj_fun(const Surjection& s) {
  return FinFun(FinSet::range(s.size()), FinSet::range(surj_target(s)), s);
}

std::string surj_str(const Surjection& s) {
  std::string out = std::to_string(s.size()) + "->" + std::to_string(surj_target(s)) + ":";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

namespace {

Surjection identity_surj(std::size_t n) {
  Surjection s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::uint32_t>(i);
  return s;
}

std::vector<Surjection> all_surjections_upto(std::size_t N) {
  std::vector<Surjection> out;
  for (std::size_t m = 0; m <= N; ++m)
    for (std::size_t n = 0; n <= m; ++n)
      for (auto& s : surjections(m, n)) out.push_back(std::move(s));
  return out;
}

void check_sets(std::size_t N, const std::vector<FinSet>& sets) {
  if (sets.size() != N + 1)
    throw std::invalid_argument("soft species: expected " + std::to_string(N + 1) + " degree sets, got " +
                                std::to_string(sets.size()));
  for (std::size_t m = 2; m <= N; ++m)
    if (!sets[m].empty() && sets[m - 1].empty())
      throw std::invalid_argument("soft species: G(" + std::to_string(m) + ") is nonempty but G(" +
                                  std::to_string(m - 1) + ") is empty, so the surjection has nowhere to go");
}

std::vector<Element> atoms(const Surjection& s) {
  std::vector<Element> v;
  v.reserve(s.size());
  for (auto x : s) v.push_back(Element::atom(x));
  return v;
}

Surjection from_atoms(const Element& tuple) {
  Surjection s;
  for (const auto& e : tuple.children()) s.push_back(static_cast<std::uint32_t>(e.atom_value()));
  return s;
}

// increasing n-subsets of x, by index
template <class Fn>
void for_each_subset(const FinSet& x, std::size_t n, Fn&& fn) {
  if (n > x.size()) return;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<Element> cur(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) cur[i] = x[idx[i]];
    fn(cur);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == x.size() - n + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// image of x, increasing, with the rank surjection onto it
std::pair<std::vector<Element>, Surjection> factor_image(const std::vector<Element>& x) {
  std::vector<Element> image(x.begin(), x.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  Surjection s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    s[i] = static_cast<std::uint32_t>(std::lower_bound(image.begin(), image.end(), x[i]) - image.begin());
  return {std::move(image), std::move(s)};
}

FinFun inclusion_of(const std::vector<Element>& image, const FinSet& x) {
  std::vector<std::uint32_t> t;
  for (const auto& e : image) t.push_back(static_cast<std::uint32_t>(x.index(e)));
  return FinFun(FinSet::range(image.size()), x, t);
}

FunctorPtr verified(FunctorPtr f, Report& r) {
  if (!f->certified()) r.add(check_taut(f));
  return f;
}

}  // namespace

// ---------------- soft species ----------------

SoftSpecies::SoftSpecies(std::size_t N, std::vector<FinSet> sets, const ActFn& act, std::string name)
    : n_(N), sets_(std::move(sets)), name_(std::move(name)) {
  check_sets(N, sets_);
  for (const auto& s : all_surjections_upto(N)) {
    const FinSet& dom = sets_[s.size()];
    const FinSet& cod = sets_[surj_target(s)];
    std::vector<Element> img;
    img.reserve(dom.size());
    for (const auto& a : dom) {
      Element b = act(s, a);
      if (!cod.contains(b))
        throw std::invalid_argument("soft species " + name_ + ": " + surj_str(s) + " sends " + a.str() + " to " +
                                    b.str() + ", outside G(" + std::to_string(surj_target(s)) + ")");
      img.push_back(b);
    }
    act_.emplace(s, FinFun::from_elements(dom, cod, img));
  }
  for (std::size_t n = 0; n <= N; ++n)
    if (!(act_.at(identity_surj(n)) == FinFun::identity(sets_[n])))
      throw std::invalid_argument("soft species " + name_ + ": identity on " + std::to_string(n) + " acts nontrivially");
  for (const auto& [s, fs] : act_)
    for (const auto& [t, ft] : act_) {
      if (t.size() != surj_target(s)) continue;
      if (!(act_.at(surj_compose(t, s)) == compose(ft, fs)))
        throw std::invalid_argument("soft species " + name_ + ": action of " + surj_str(surj_compose(t, s)) +
                                    " is not the composite of " + surj_str(t) + " after " + surj_str(s));
    }
}

SoftSpecies SoftSpecies::generated(std::size_t N, std::vector<FinSet> sets, const std::map<Surjection, FinFun>& gens,
                                   std::string name) {
  check_sets(N, sets);
  std::map<Surjection, FinFun> known;
  for (std::size_t n = 0; n <= N; ++n) known.emplace(identity_surj(n), FinFun::identity(sets[n]));
  for (const auto& [s, f] : gens) {
    if (s.size() > N || surj_target(s) > N || surjections(s.size(), surj_target(s)).empty())
      throw std::invalid_argument("soft species " + name + ": " + surj_str(s) + " is not a surjection within degree " +
                                  std::to_string(N));
    if (f.dom() != sets[s.size()] || f.cod() != sets[surj_target(s)])
      throw std::invalid_argument("soft species " + name + ": action of " + surj_str(s) + " has the wrong domain or codomain");
    auto [it, fresh_entry] = known.emplace(s, f);
    if (!fresh_entry && !(it->second == f))
      throw std::invalid_argument("soft species " + name + ": conflicting actions for " + surj_str(s));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<Surjection, FinFun>> found;
    for (const auto& [s, fs] : known)
      for (const auto& [t, ft] : known) {
        if (t.size() != surj_target(s)) continue;
        Surjection ts = surj_compose(t, s);
        FinFun f = compose(ft, fs);
        auto it = known.find(ts);
        if (it == known.end()) found.emplace_back(ts, f);
        else if (!(it->second == f))
          throw std::invalid_argument("soft species " + name + ": " + surj_str(ts) + " acts differently as " +
                                      surj_str(t) + " after " + surj_str(s));
      }
    for (auto& [s, f] : found)
      if (known.emplace(s, f).second) grew = true;
  }
  for (const auto& s : all_surjections_upto(N))
    if (!known.count(s))
      throw std::invalid_argument("soft species " + name + ": the action of " + surj_str(s) +
                                  " is not determined by the given surjections");
  return SoftSpecies(N, std::move(sets), [known](const Surjection& s, const Element& a) { return known.at(s)(a); },
                     std::move(name));
}

const FinFun& SoftSpecies::action(const Surjection& s) const {
  auto it = act_.find(s);
  if (it == act_.end()) throw std::out_of_range("soft species " + name_ + ": no surjection " + surj_str(s));
  return it->second;
}

SoftSpecies SoftSpecies::truncate(std::size_t N) const {
  std::vector<FinSet> sets;
  for (std::size_t n = 0; n <= N; ++n) sets.push_back(n <= n_ ? sets_[n] : FinSet());
  auto self = *this;
  return SoftSpecies(
      N, sets, [self](const Surjection& s, const Element& a) { return self.act(s, a); },
      name_ + "|" + std::to_string(N));
}

std::size_t SoftSpecies::total_size() const {
  std::size_t t = 0;
  for (const auto& s : sets_) t += s.size();
  return t;
}

std::string SoftSpecies::describe() const {
  std::string s = name_ + " [";
  for (std::size_t n = 0; n <= n_; ++n) s += (n ? "," : "") + std::to_string(sets_[n].size());
  return s + "]";
}

SoftMap soft_map(const SoftSpecies& src, const SoftSpecies& dst, std::vector<FinFun> components) {
  if (src.degree_bound() != dst.degree_bound() || components.size() != src.degree_bound() + 1)
    throw std::invalid_argument("soft_map: degree bounds differ");
  for (std::size_t n = 0; n <= src.degree_bound(); ++n)
    if (components[n].dom() != src.at(n) || components[n].cod() != dst.at(n))
      throw std::invalid_argument("soft_map: component " + std::to_string(n) + " has the wrong domain or codomain");
  for (const auto& s : all_surjections_upto(src.degree_bound())) {
    FinFun a = compose(components[surj_target(s)], src.action(s));
    FinFun b = compose(dst.action(s), components[s.size()]);
    if (!(a == b)) throw std::invalid_argument("soft_map: not natural at " + surj_str(s));
  }
  return SoftMap{src, dst, std::move(components)};
}

// ---------------- Newton sum ----------------

Element newton_element(const std::vector<Element>& image, const Element& a) {
  return sum_element(image.size(), Element::tuple({Element::tuple(image), a}));
}

FunctorPtr newton_sum(const SoftSpecies& g) {
  return make_functor(
      "newton(" + g.name() + ")",
      [g](const FinSet& x) {
        std::vector<Element> out;
        for (std::size_t n = 0; n <= g.degree_bound(); ++n) {
          if (g.at(n).empty()) continue;
          for_each_subset(x, n, [&](const std::vector<Element>& image) {
            for (const auto& a : g.at(n)) out.push_back(newton_element(image, a));
          });
        }
        return FinSet(std::move(out));
      },
      [g](const FinFun& h, const Element& e) {
        const Element& body = e.inner();
        std::vector<Element> mapped;
        for (const auto& p : body[0].children()) mapped.push_back(h(p));
        auto [image, s] = factor_image(mapped);
        return newton_element(image, g.act(s, body[1]));
      });
}

TransfPtr newton_sum_transf(const SoftMap& t) {
  auto comps = t.components;
  return make_transf(
      newton_sum(t.src), newton_sum(t.dst),
      [comps](const FinSet&, const Element& e) {
        const Element& body = e.inner();
        return newton_element(body[0].children(), comps[body[0].arity()](body[1]));
      },
      "newton(" + t.src.name() + " -> " + t.dst.name() + ")");
}

// ---------------- delta_star ----------------

SoftSpecies delta_star(const FunctorPtr& f, std::size_t N) {
  if (!f->certified())
    throw NotTautError("delta_star: " + f->name() + " has no tautness certificate (run check_taut first)");
  std::vector<FinSet> sets;
  for (std::size_t n = 0; n <= N; ++n) {
    FinSet full = FinSet::range(n);
    const FinSet& big = f->eval(full);
    std::vector<char> hit(big.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      FinSet sub = set_difference(full, FinSet({Element::atom(i)}));
      FinFun m = f->map(FinFun::inclusion(sub, full));
      for (std::size_t k = 0; k < m.dom().size(); ++k) hit[m.at_index(k)] = 1;
    }
    std::vector<Element> keep;
    for (std::size_t k = 0; k < big.size(); ++k)
      if (!hit[k]) keep.push_back(big[k]);
    sets.push_back(FinSet::from_sorted(std::move(keep)));
  }
  // landing in G(n) is checked by the constructor
  return SoftSpecies(
      N, std::move(sets), [f](const Surjection& s, const Element& a) { return f->apply(surj_fun(s), a); },
      "delta*(" + f->name() + ")");
}

// ---------------- softening ----------------

SoftSpecies soften(const SpeciesSpec& s, std::size_t N) {
  auto coeff = s.coeff;
  std::vector<FinSet> sets;
  for (std::size_t n = 0; n <= N; ++n) {
    std::vector<Element> out;
    for (std::size_t m = n; m < coeff.size(); ++m) {
      if (coeff[m].carrier().empty()) continue;
      for (const auto& f : surjections(m, n))
        for (const auto& c : coeff[m].carrier()) out.push_back(species_canonical(coeff[m], atoms(f), c));
    }
    sets.emplace_back(std::move(out));
  }
  return SoftSpecies(
      N, std::move(sets),
      [coeff](const Surjection& t, const Element& a) {
        const Element& rep = a.inner();
        Surjection f = from_atoms(rep[0]);
        return species_canonical(coeff[f.size()], atoms(surj_compose(t, f)), rep[1]);
      },
      "soft(" + describe(s) + ")");
}

Report soften_check(const SpeciesSpec& s, int K) {
  Report r("newton sum of the softened " + describe(s));
  std::size_t d = s.coeff.empty() ? 0 : s.coeff.size() - 1;
  SoftSpecies g = soften(s, d);
  r.param("degrees", g.describe());
  auto coeff = s.coeff;
  Family to_newton = [coeff](const FinSet&, const Element& e) {
    const Element& rep = e.inner().inner();
    auto [image, f] = factor_image(rep[0].children());
    return newton_element(image, species_canonical(coeff[f.size()], atoms(f), rep[1]));
  };
  TautOptions opt;
  opt.K = K;
  r.add(iso_witness(analytic_functor(s), newton_sum(g), opt, to_newton));
  return r;
}

// ---------------- unit and counit of the Newton summation ----------------

Report unit_iso_check(const SoftSpecies& g) {
  Report r("unit G -> delta*(newton(G)) for " + g.describe());
  auto gt = newton_sum(g);
  Report taut = check_taut(gt);
  bool taut_ok = taut.passed();
  r.add(std::move(taut));
  if (!taut_ok) return r;
  SoftSpecies d = delta_star(gt, g.degree_bound());
  auto eta = [](std::size_t n, const Element& a) {
    std::vector<Element> id;
    for (std::size_t i = 0; i < n; ++i) id.push_back(Element::atom(i));
    return newton_element(id, a);
  };
  bool bij = true, natural = true;
  for (std::size_t n = 0; n <= g.degree_bound(); ++n) {
    std::set<Element> hit;
    for (const auto& a : g.at(n)) {
      Element e = eta(n, a);
      if (!d.at(n).contains(e)) {
        if (bij) r.witness("eta(" + a.str() + ") = " + e.str() + " is not in degree " + std::to_string(n));
        bij = false;
      }
      hit.insert(e);
    }
    if (hit.size() != g.at(n).size() || d.at(n).size() != g.at(n).size()) {
      if (bij) r.witness("degree " + std::to_string(n) + ": |G(n)| = " + std::to_string(g.at(n).size()) +
                         ", |delta^n(0)| = " + std::to_string(d.at(n).size()));
      bij = false;
    }
  }
  for (const auto& s : all_surjections_upto(g.degree_bound()))
    for (const auto& a : g.at(s.size())) {
      if (eta(surj_target(s), g.act(s, a)) != d.act(s, eta(s.size(), a))) {
        if (natural) r.witness("eta does not commute with " + surj_str(s) + " at " + a.str());
        natural = false;
      }
    }
  r.check("eta bijective in every degree", bij);
  r.check("eta commutes with surjections", natural);
  return r;
}

Report counit_iso_check(const FunctorPtr& f, std::size_t N, int K) {
  Report r("newton(delta*(" + f->name() + ")) -> " + f->name());
  r.param("N", static_cast<std::int64_t>(N));
  verified(f, r);
  if (!r.passed()) return r;
  SoftSpecies g = delta_star(f, N);
  r.param("degrees", g.describe());
  Family eps = [f](const FinSet& x, const Element& e) {
    const Element& body = e.inner();
    return f->apply(inclusion_of(body[0].children(), x), body[1]);
  };
  TautOptions opt;
  opt.K = K;
  r.add(iso_witness(newton_sum(g), f, opt, eps));
  return r;
}

Report truncation_comparison(const FunctorPtr& f, std::size_t N, int kmax) {
  Report r("truncated newton sum of " + f->name() + " at N = " + std::to_string(N));
  verified(f, r);
  if (!r.passed()) return r;
  auto gt = newton_sum(delta_star(f, N));
  bool below = true;
  std::size_t first_gap = 0;
  bool gap = false;
  for (int k = 0; k <= kmax; ++k) {
    std::size_t a = gt->eval(test_set(k)).size(), b = f->eval(test_set(k)).size();
    r.param("k=" + std::to_string(k), std::to_string(a) + "/" + std::to_string(b));
    if (a > b) below = false;
    if (a < b && !gap) {
      gap = true;
      first_gap = static_cast<std::size_t>(k);
    }
  }
  r.check("the truncated sum never exceeds F", below);
  if (gap) r.note("under-counts from k = " + std::to_string(first_gap) + ": F is not soft analytic of degree <= N");
  else r.note("agrees up to k = " + std::to_string(kmax));
  return r;
}

// ---------------- adjunction ----------------

Report adjunction_factorization_check(const SoftSpecies& g, const FunctorPtr& f, const std::vector<FinFun>& u, int K) {
  Report r("factorization through delta* for " + g.describe() + " -> " + f->name());
  const std::size_t N = g.degree_bound();
  verified(f, r);
  if (!r.passed()) return r;
  bool shape = u.size() == N + 1;
  for (std::size_t n = 0; shape && n <= N; ++n)
    shape = u[n].dom() == g.at(n) && u[n].cod() == f->eval(FinSet::range(n));
  r.check("u has components G(n) -> F(n)", shape);
  if (!shape) return r;
  bool natural = true;
  for (const auto& s : all_surjections_upto(N))
    for (const auto& a : g.at(s.size()))
      if (f->apply(surj_fun(s), u[s.size()](a)) != u[surj_target(s)](g.act(s, a))) {
        if (natural) r.witness("u is not natural at " + surj_str(s) + ", " + a.str());
        natural = false;
      }
  r.check("u natural over surjections", natural);
  if (!natural) return r;

  SoftSpecies ds = delta_star(f, N);
  bool lands = true;
  std::string miss;
  for (std::size_t n = 0; n <= N && lands; ++n)
    for (const auto& a : g.at(n))
      if (!ds.at(n).contains(u[n](a))) {
        lands = false;
        miss = "u(" + a.str() + ") = " + u[n](a).str() + " lies in the image of a proper subset of " +
               std::to_string(n);
        break;
      }

  auto comps = u;
  auto t = make_transf(
      newton_sum(g), f,
      [f, comps](const FinSet& x, const Element& e) {
        const Element& body = e.inner();
        return f->apply(inclusion_of(body[0].children(), x), comps[body[0].arity()](body[1]));
      },
      "mate");
  TautOptions opt;
  opt.K = K;
  r.add(check_natural(t, opt));
  Report taut = check_taut_transf(t, opt);
  bool taut_ok = taut.passed();
  r.param("lands in delta*", lands ? "yes" : "no");
  r.param("mate taut", taut_ok ? "yes" : "no");
  if (!lands) r.note(miss);
  if (!taut_ok) r.note("mate not taut: " + taut.first_witness());
  r.check("lands in delta* iff the mate is taut", lands == taut_ok,
          lands == taut_ok ? (lands ? "both hold" : "both fail")
          : lands          ? "lands but the mate is not taut"
                           : "does not land but the mate is taut");
  return r;
}

namespace {

// one point in degrees lo..hi
SoftSpecies points(std::size_t lo, std::size_t hi, std::size_t N) {
  std::vector<FinSet> sets;
  for (std::size_t n = 0; n <= N; ++n) sets.push_back(n >= lo && n <= hi ? FinSet::range(1) : FinSet());
  return SoftSpecies(
      N, sets, [](const Surjection&, const Element& a) { return a; },
      "pt[" + std::to_string(lo) + ".." + std::to_string(hi) + "]");
}

std::vector<FinFun> constant_u(const SoftSpecies& g, const FunctorPtr& f, const std::function<Element(std::size_t)>& val) {
  std::vector<FinFun> u;
  for (std::size_t n = 0; n <= g.degree_bound(); ++n) {
    std::vector<Element> img(g.at(n).size(), g.at(n).empty() ? Element() : val(n));
    u.push_back(FinFun::from_elements(g.at(n), f->eval(FinSet::range(n)), img));
  }
  return u;
}

Element range_set(std::size_t n) {
  std::vector<Element> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Element::atom(i));
  return Element::set(v);
}

Element unordered_pair(std::uint64_t a, std::uint64_t b) {
  return sum_element(0, Element::cls(Element::tuple({Element::atom(a), Element::atom(b)})));
}

FunctorPtr checked(FunctorPtr f) {
  Report r = check_taut(f);
  if (!r.passed()) throw std::logic_error("library functor failed the tautness check: " + f->name());
  return f;
}

std::vector<FinFun> inclusion_u(const SoftSpecies& g, const FunctorPtr& f) {
  std::vector<FinFun> u;
  for (std::size_t n = 0; n <= g.degree_bound(); ++n)
    u.push_back(FinFun::from_elements(g.at(n), f->eval(FinSet::range(n)), g.at(n).elems()));
  return u;
}

}  // namespace

std::vector<AdjunctionInstance> adjunction_instances() {
  std::vector<AdjunctionInstance> out;
  auto p = checked(powerset_monad().functor);
  auto filt = checked(filter_monad().functor);
  auto div2 = checked(quot_power_functor(divided_power(2)));
  auto sq = checked(product({identity(), identity()}));

  SoftSpecies one_two = points(1, 2, 2);
  out.push_back({"P, whole set", one_two, p, constant_u(one_two, p, range_set), true});
  out.push_back({"P, empty set", one_two, p, constant_u(one_two, p, [](std::size_t) { return range_set(0); }), false});
  out.push_back({"filters, principal on the whole set", one_two, filt,
                 constant_u(one_two, filt, [](std::size_t n) { return filter_element(range_set(n)); }), true});
  out.push_back({"filters, generated by the empty set", one_two, filt,
                 constant_u(one_two, filt, [](std::size_t) { return filter_element(range_set(0)); }), false});
  SoftSpecies zero_one = points(0, 1, 1);
  out.push_back({"P, empty set from degree 0", zero_one, p,
                 constant_u(zero_one, p, [](std::size_t) { return range_set(0); }), false});
  SoftSpecies zero_two = points(0, 2, 2);
  out.push_back({"P, whole set from degree 0", zero_two, p, constant_u(zero_two, p, range_set), true});

  // X^[2]: the pair {0,1} lands, the degenerate pairs do not
  out.push_back({"X^[2], distinct pair", one_two, div2,
                 constant_u(one_two, div2,
                            [](std::size_t n) { return n == 1 ? unordered_pair(0, 0) : unordered_pair(0, 1); }),
                 true});
  {
    // G(2) = two points swapped by S_2, both collapsing to the point of G(1)
    std::vector<FinSet> sets{FinSet(), FinSet::range(1), FinSet::range(2)};
    SoftSpecies swapped(
        2, sets,
        [](const Surjection& s, const Element& a) {
          if (s.size() == 2 && surj_target(s) == 1) return Element::atom(0);
          if (s == Surjection{1, 0}) return Element::atom(1 - a.atom_value());
          return a;
        },
        "swap2");
    std::vector<FinFun> u{FinFun::from_elements(FinSet(), div2->eval(FinSet::range(0)), {}),
                          FinFun::from_elements(sets[1], div2->eval(FinSet::range(1)), {unordered_pair(0, 0)}),
                          FinFun::from_elements(sets[2], div2->eval(FinSet::range(2)),
                                                {unordered_pair(0, 0), unordered_pair(1, 1)})};
    out.push_back({"X^[2], degenerate pairs", swapped, div2, u, false});
  }

  SoftSpecies zero = points(0, 0, 2);
  auto sq_plus_1 = checked(poly_functor({{2, 0}}));
  out.push_back({"degree 0 into X^2 + 1", zero, sq_plus_1,
                 constant_u(zero, sq_plus_1, [](std::size_t) { return sum_element(1, Element::tuple({})); }), true});

  SoftSpecies dsq = delta_star(sq, 2);
  out.push_back({"delta*(X^2) into X^2", dsq, sq, inclusion_u(dsq, sq), true});
  SoftSpecies dp = delta_star(p, 3);
  out.push_back({"delta*(P) into P", dp, p, inclusion_u(dp, p), true});

  for (std::uint64_t seed : {1u, 2u}) {
    SoftSpecies g = random_soft_species(seed, 3, 3);
    auto gt = newton_sum(g);
    checked(gt);
    std::vector<FinFun> u;
    for (std::size_t n = 0; n <= 3; ++n) {
      std::vector<Element> img, id;
      for (std::size_t i = 0; i < n; ++i) id.push_back(Element::atom(i));
      for (const auto& a : g.at(n)) img.push_back(newton_element(id, a));
      u.push_back(FinFun::from_elements(g.at(n), gt->eval(FinSet::range(n)), img));
    }
    out.push_back({"unit into the Newton sum of random species " + std::to_string(seed), g, gt, u, true});
  }
  return out;
}

// ---------------- random soft species ----------------

namespace {

// disjoint union of coset spaces S_n / H, points numbered in order
struct CosetSet {
  FinSet carrier;
  std::map<Perm, std::vector<std::uint32_t>> act;  // permutation -> table
};

CosetSet random_sn_set(std::size_t n, std::size_t budget, std::mt19937_64& rng) {
  PermGroup sn = PermGroup::symmetric(n);
  std::vector<PermGroup> subs = sn.subgroups();
  std::vector<std::vector<std::vector<Perm>>> orbits;  // per orbit, the cosets as sorted element lists
  std::size_t used = 0;
  std::size_t want = rng() % (budget + 1);
  for (int tries = 0; used < want && tries < 32; ++tries) {
    const PermGroup& h = subs[rng() % subs.size()];
    std::size_t index = sn.order() / h.order();
    if (used + index > want) continue;
    std::set<std::vector<Perm>> cosets;
    for (const auto& g : sn.elements()) {
      std::vector<Perm> c;
      for (const auto& x : h.elements()) c.push_back(perm_compose(g, x));
      std::sort(c.begin(), c.end());
      cosets.insert(c);
    }
    orbits.emplace_back(cosets.begin(), cosets.end());
    used += index;
  }
  CosetSet out;
  out.carrier = FinSet::range(used);
  for (const auto& p : sn.elements()) {
    std::vector<std::uint32_t> t;
    std::uint32_t base = 0;
    for (const auto& orbit : orbits) {
      for (const auto& c : orbit) {
        std::vector<Perm> moved;
        for (const auto& x : c) moved.push_back(perm_compose(p, x));
        std::sort(moved.begin(), moved.end());
        t.push_back(base + static_cast<std::uint32_t>(std::find(orbit.begin(), orbit.end(), moved) - orbit.begin()));
      }
      base += static_cast<std::uint32_t>(orbit.size());
    }
    out.act.emplace(p, std::move(t));
  }
  return out;
}

}  // namespace

SoftSpecies random_soft_species(std::uint64_t seed, std::size_t N, std::size_t max_size) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::vector<CosetSet> sn(N + 1);
    for (std::size_t n = 0; n <= N; ++n) sn[n] = random_sn_set(n, max_size, rng);
    std::vector<FinSet> sets;
    for (const auto& c : sn) sets.push_back(c.carrier);
    bool ok = true;
    for (std::size_t m = 2; m <= N; ++m) ok = ok && (sets[m].empty() || !sets[m - 1].empty());
    if (!ok) continue;
    std::map<Surjection, FinFun> gens;
    for (std::size_t n = 0; n <= N; ++n)
      for (const auto& [p, t] : sn[n].act) gens.emplace(Surjection(p.begin(), p.end()), FinFun(sets[n], sets[n], t));
    // degeneracy merging 0 and 1, constant on orbits of the transposition (0 1)
    for (std::size_t m = 2; m <= N; ++m) {
      Surjection d(m);
      for (std::size_t i = 1; i < m; ++i) d[i] = static_cast<std::uint32_t>(i - 1);
      Perm swap01 = perm_identity(m);
      std::swap(swap01[0], swap01[1]);
      const auto& sw = sn[m].act.at(swap01);
      std::vector<std::uint32_t> img(sets[m].size());
      for (std::size_t a = 0; a < img.size(); ++a)
        img[a] = sw[a] < a ? img[sw[a]] : static_cast<std::uint32_t>(rng() % sets[m - 1].size());
      gens.emplace(d, FinFun(sets[m], sets[m - 1], img));
    }
    try {
      return SoftSpecies::generated(N, sets, gens, "rand" + std::to_string(seed));
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("random_soft_species: no functorial choice found for seed " + std::to_string(seed));
}

}  // namespace fdiff
