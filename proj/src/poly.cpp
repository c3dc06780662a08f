// polynomial, quotient-power and analytic functors
#include <algorithm>
#include <map>
#include <stdexcept>

#include "fdiff/classes.hpp"

namespace fdiff {

namespace {

// every tuple of length n over x, in lexicographic order
template <class Fn>
void for_each_tuple(const FinSet& x, std::size_t n, Fn&& fn) {
  if (n > 0 && x.empty()) return;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Element> cur(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) cur[i] = x[idx[i]];
    fn(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++idx[i] < x.size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<Element> mapped(const FinFun& f, const Element& t) {
  std::vector<Element> v;
  v.reserve(t.arity());
  for (const auto& c : t.children()) v.push_back(f(c));
  return v;
}

std::string power_str(std::size_t n) {
  if (n == 0) return "1";
  if (n == 1) return "X";
  return "X^" + std::to_string(n);
}

}  // namespace

// ---------------- polynomials ----------------

FunctorPtr poly_functor(const PolySpec& spec) {
  auto ex = spec.exponents;
  return make_functor(
      describe(spec),
      [ex](const FinSet& x) {
        std::vector<Element> out;
        for (std::size_t i = 0; i < ex.size(); ++i)
          for_each_tuple(x, ex[i], [&](const std::vector<Element>& t) {
            out.push_back(sum_element(i, Element::tuple(t)));
          });
        return FinSet(std::move(out));
      },
      [](const FinFun& f, const Element& e) {
        return sum_element(sum_index(e), Element::tuple(mapped(f, e.inner())));
      });
}

std::vector<std::uint64_t> coefficients(const PolySpec& spec) {
  std::size_t deg = 0;
  for (auto e : spec.exponents) deg = std::max(deg, e);
  std::vector<std::uint64_t> c(spec.exponents.empty() ? 0 : deg + 1, 0);
  for (auto e : spec.exponents) ++c[e];
  return c;
}

std::string describe(const PolySpec& spec) {
  auto c = coefficients(spec);
  std::string s;
  for (std::size_t d = c.size(); d-- > 0;) {
    if (!c[d]) continue;
    if (!s.empty()) s += " + ";
    if (c[d] != 1 || d == 0) s += std::to_string(c[d]);
    if (d > 0) s += power_str(d);
  }
  return s.empty() ? "0" : s;
}

TransfPtr poly_morphism(const PolySpec& src, const PolySpec& dst, const std::vector<std::size_t>& alpha,
                        const std::vector<FinFun>& fs) {
  if (alpha.size() != src.exponents.size() || fs.size() != src.exponents.size())
    throw std::invalid_argument("poly_morphism: one alpha value and one f_i per source summand");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] >= dst.exponents.size()) throw std::invalid_argument("poly_morphism: alpha out of range");
    if (fs[i].dom().size() != dst.exponents[alpha[i]] || fs[i].cod().size() != src.exponents[i])
      throw std::invalid_argument("poly_morphism: f_" + std::to_string(i) + " has the wrong shape");
  }
  return make_transf(
      poly_functor(src), poly_functor(dst),
      [alpha, fs](const FinSet&, const Element& e) {
        std::size_t i = sum_index(e);
        const Element& phi = e.inner();
        std::vector<Element> v;
        for (auto j : fs[i].table()) v.push_back(phi[j]);
        return sum_element(alpha[i], Element::tuple(v));
      },
      "poly morphism");
}

bool is_taut_poly_morphism(const std::vector<FinFun>& fs) {
  return std::all_of(fs.begin(), fs.end(), [](const FinFun& f) { return f.surjective(); });
}

// ---------------- quotient powers ----------------

QuotPowerSpec divided_power(std::size_t n) { return {{{n, PermGroup::symmetric(n)}}}; }

Element quot_canonical(const std::vector<Element>& t, const PermGroup& g) {
  std::vector<Element> best, cur(t.size());
  bool first = true;
  for (const auto& p : g.elements()) {
    for (std::size_t i = 0; i < t.size(); ++i) cur[i] = t[p[i]];
    if (first || std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end())) {
      best = cur;
      first = false;
    }
  }
  return Element::tuple(best);
}

FunctorPtr quot_power_functor(const QuotPowerSpec& spec) {
  auto terms = spec.terms;
  for (const auto& [n, g] : terms)
    if (g.degree() != n) throw std::invalid_argument("quot_power_functor: group degree differs from exponent");
  return make_functor(
      describe(spec),
      [terms](const FinSet& x) {
        std::vector<Element> out;
        for (std::size_t i = 0; i < terms.size(); ++i)
          for_each_tuple(x, terms[i].first, [&](const std::vector<Element>& t) {
            out.push_back(sum_element(i, Element::cls(quot_canonical(t, terms[i].second))));
          });
        return FinSet(std::move(out));
      },
      [terms](const FinFun& f, const Element& e) {
        std::size_t i = sum_index(e);
        return sum_element(i, Element::cls(quot_canonical(mapped(f, e.inner().inner()), terms[i].second)));
      });
}

std::string describe(const QuotPowerSpec& spec) {
  // equal summands are collected into a coefficient, highest degree first
  std::vector<std::pair<std::size_t, std::string>> keys;
  std::map<std::pair<std::size_t, std::string>, std::size_t> count;
  for (const auto& [n, g] : spec.terms) {
    std::string term;
    if (n == 0)
      term = "1";
    else if (g.order() == 1)
      term = power_str(n);
    else if (g.is_symmetric())
      term = "X^[" + std::to_string(n) + "]";
    else
      term = power_str(n) + "/" + g.str();
    if (count[{n, term}]++ == 0) keys.emplace_back(n, term);
  }
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::string s;
  for (const auto& k : keys) {
    if (!s.empty()) s += " + ";
    std::size_t c = count[k];
    if (k.first == 0)
      s += std::to_string(c);
    else
      s += (c == 1 ? "" : std::to_string(c) + "*") + k.second;
  }
  return s.empty() ? "0" : s;
}

// ---------------- analytic functors ----------------

GroupAction empty_action(std::size_t n) {
  return GroupAction(PermGroup::symmetric(n), FinSet(), [](const Perm&, const Element& e) { return e; });
}

SpeciesSpec species_power(std::size_t n) {
  SpeciesSpec s;
  for (std::size_t k = 0; k < n; ++k) s.coeff.push_back(empty_action(k));
  s.coeff.push_back(regular_action(n));
  return s;
}

SpeciesSpec species_divided(std::size_t n) {
  SpeciesSpec s;
  for (std::size_t k = 0; k < n; ++k) s.coeff.push_back(empty_action(k));
  s.coeff.push_back(trivial_action(n, 1));
  return s;
}

SpeciesSpec species_cosets(std::size_t n, const PermGroup& g) {
  if (g.degree() != n) throw std::invalid_argument("species_cosets: degree mismatch");
  auto coset = [g](const Perm& s) {
    Perm best = s;
    for (const auto& h : g.elements()) best = std::min(best, perm_compose(s, h));
    return perm_element(best);
  };
  std::vector<Element> carrier;
  for (const auto& s : all_perms(n)) carrier.push_back(coset(s));
  SpeciesSpec sp;
  for (std::size_t k = 0; k < n; ++k) sp.coeff.push_back(empty_action(k));
  sp.coeff.emplace_back(PermGroup::symmetric(n), FinSet(carrier), [coset](const Perm& t, const Element& c) {
    return coset(perm_compose(t, element_perm(c)));
  });
  return sp;
}

SpeciesSpec species_sum(const SpeciesSpec& a, const SpeciesSpec& b) {
  SpeciesSpec s;
  std::size_t n = std::max(a.coeff.size(), b.coeff.size());
  for (std::size_t k = 0; k < n; ++k) {
    const GroupAction* x = k < a.coeff.size() ? &a.coeff[k] : nullptr;
    const GroupAction* y = k < b.coeff.size() ? &b.coeff[k] : nullptr;
    std::vector<Element> carrier;
    if (x)
      for (const auto& c : x->carrier()) carrier.push_back(sum_element(0, c));
    if (y)
      for (const auto& c : y->carrier()) carrier.push_back(sum_element(1, c));
    s.coeff.emplace_back(PermGroup::symmetric(k), FinSet(carrier), [x, y](const Perm& p, const Element& c) {
      const GroupAction* src = sum_index(c) == 0 ? x : y;
      return sum_element(sum_index(c), src->act(p, c.inner()));
    });
  }
  return s;
}

std::size_t species_degree(const SpeciesSpec& spec) {
  std::size_t d = 0;
  for (std::size_t n = 0; n < spec.coeff.size(); ++n)
    if (!spec.coeff[n].carrier().empty()) d = n;
  return d;
}

Element species_canonical(const GroupAction& c, const std::vector<Element>& x, const Element& cval) {
  const PermGroup& g = c.group();
  std::size_t ci = c.carrier().index(cval);
  Element best;
  bool first = true;
  std::vector<Element> xs(x.size());
  for (std::size_t si = 0; si < g.order(); ++si) {
    const Perm& s = g.elements()[si];
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = x[s[i]];
    std::size_t inv = g.index_of(perm_inverse(s));
    Element cand = Element::tuple({Element::tuple(xs), c.carrier()[c.act_index(inv, ci)]});
    if (first || cand < best) {
      best = cand;
      first = false;
    }
  }
  return Element::cls(best);
}

FunctorPtr analytic_functor(const SpeciesSpec& spec) {
  for (std::size_t n = 0; n < spec.coeff.size(); ++n)
    if (spec.coeff[n].group().degree() != n || !spec.coeff[n].group().is_symmetric())
      throw std::invalid_argument("analytic_functor: coefficient " + std::to_string(n) + " is not an S_n-set");
  auto coeff = spec.coeff;
  return make_functor(
      describe(spec),
      [coeff](const FinSet& x) {
        std::vector<Element> out;
        for (std::size_t n = 0; n < coeff.size(); ++n) {
          if (coeff[n].carrier().empty()) continue;
          for_each_tuple(x, n, [&](const std::vector<Element>& t) {
            for (const auto& c : coeff[n].carrier()) out.push_back(sum_element(n, species_canonical(coeff[n], t, c)));
          });
        }
        return FinSet(std::move(out));
      },
      [coeff](const FinFun& f, const Element& e) {
        std::size_t n = sum_index(e);
        const Element& rep = e.inner().inner();
        return sum_element(n, species_canonical(coeff[n], mapped(f, rep[0]), rep[1]));
      });
}

std::string describe(const SpeciesSpec& spec) {
  std::string s;
  for (std::size_t n = spec.coeff.size(); n-- > 0;) {
    const auto& c = spec.coeff[n];
    if (c.carrier().empty()) continue;
    if (!s.empty()) s += " + ";
    s += power_str(n) + "(x)C" + std::to_string(n) + "[" + std::to_string(c.carrier().size()) + "]";
  }
  return s.empty() ? "0" : s;
}

}  // namespace fdiff
