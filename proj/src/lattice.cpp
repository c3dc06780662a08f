// finite lattices, normalized exponentials, Dirichlet functors and n_*
#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fdiff/classes.hpp"

namespace fdiff {

// ---------------- Lattice ----------------

Lattice::Lattice(FinSet elems, const std::vector<std::vector<char>>& leq, std::string name)
    : elems_(std::move(elems)), name_(std::move(name)) {
  const std::size_t n = elems_.size();
  if (n == 0) throw std::invalid_argument("lattice: empty carrier has no bottom");
  if (leq.size() != n) throw std::invalid_argument("lattice: order matrix has the wrong size");
  leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) throw std::invalid_argument("lattice: order matrix has the wrong size");
    for (std::size_t j = 0; j < n; ++j) leq_[i * n + j] = leq[i][j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq_[i * n + i]) throw std::invalid_argument("lattice: order not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq_[i * n + j] && leq_[j * n + i]) throw std::invalid_argument("lattice: order not antisymmetric");
      for (std::size_t k = 0; k < n; ++k)
        if (leq_[i * n + j] && leq_[j * n + k] && !leq_[i * n + k])
          throw std::invalid_argument("lattice: order not transitive");
    }
  }
  join_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // least upper bound, if it exists
      std::optional<std::size_t> best;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(leq_[a * n + c] && leq_[b * n + c])) continue;
        bool least = true;
        for (std::size_t d = 0; d < n && least; ++d)
          if (leq_[a * n + d] && leq_[b * n + d] && !leq_[c * n + d]) least = false;
        if (least) best = c;
      }
      if (!best)
        throw std::invalid_argument("lattice: no join for " + elems_[a].str() + " and " + elems_[b].str());
      join_[a * n + b] = static_cast<std::uint32_t>(*best);
    }
  std::optional<std::size_t> bot, top;
  for (std::size_t c = 0; c < n; ++c) {
    bool below = true, above = true;
    for (std::size_t d = 0; d < n; ++d) {
      below = below && leq_[c * n + d];
      above = above && leq_[d * n + c];
    }
    if (below) bot = c;
    if (above) top = c;
  }
  if (!bot || !top) throw std::invalid_argument("lattice: missing bottom or top");
  bot_ = *bot;
  top_ = *top;
}

Lattice Lattice::chain(std::size_t n) {
  if (n == 0) throw std::invalid_argument("chain: length must be positive");
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) leq[i][j] = 1;
  return Lattice(FinSet::range(n), leq, "chain" + std::to_string(n));
}

Lattice Lattice::product_of(const std::vector<Lattice>& factors, const std::string& name) {
  std::vector<std::vector<std::size_t>> coords{{}};
  for (const auto& f : factors) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& c : coords)
      for (std::size_t i = 0; i < f.size(); ++i) {
        auto d = c;
        d.push_back(i);
        next.push_back(d);
      }
    coords = std::move(next);
  }
  std::vector<Element> elems;
  for (const auto& c : coords) {
    std::vector<Element> v;
    for (std::size_t k = 0; k < c.size(); ++k) v.push_back(factors[k].element(c[k]));
    elems.push_back(Element::tuple(v));
  }
  FinSet carrier(elems);
  std::vector<std::vector<char>> leq(carrier.size(), std::vector<char>(carrier.size(), 0));
  std::vector<std::vector<std::size_t>> idx(carrier.size());
  for (std::size_t i = 0; i < carrier.size(); ++i)
    for (std::size_t k = 0; k < factors.size(); ++k) idx[i].push_back(factors[k].index(carrier[i][k]));
  for (std::size_t i = 0; i < carrier.size(); ++i)
    for (std::size_t j = 0; j < carrier.size(); ++j) {
      bool le = true;
      for (std::size_t k = 0; k < factors.size() && le; ++k) le = factors[k].leq(idx[i][k], idx[j][k]);
      leq[i][j] = le;
    }
  std::string nm = name;
  if (nm.empty()) {
    for (std::size_t k = 0; k < factors.size(); ++k) nm += (k ? "x" : "") + factors[k].name();
    if (factors.empty()) nm = "chain1";
  }
  return Lattice(carrier, leq, nm);
}

Lattice Lattice::boolean(std::size_t k) {
  return product_of(std::vector<Lattice>(k, chain(2)), "bool" + std::to_string(k));
}

bool Lattice::is_chain() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

Lattice Lattice::down_set(std::size_t l) const {
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < size(); ++a)
    if (leq(a, l)) keep.push_back(a);
  std::vector<Element> el;
  for (auto a : keep) el.push_back(elems_[a]);
  std::vector<std::vector<char>> m(keep.size(), std::vector<char>(keep.size(), 0));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) m[i][j] = leq(keep[i], keep[j]);
  Lattice d(FinSet::from_sorted(el), m, "D(" + elems_[l].str() + ")");
  if (d.is_chain()) d.rename("chain" + std::to_string(d.size()));
  return d;
}

bool lattices_isomorphic(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  // (elements below, elements above) is preserved by any order isomorphism
  auto sig = [](const Lattice& l, std::size_t x) {
    std::size_t below = 0, above = 0;
    for (std::size_t y = 0; y < l.size(); ++y) {
      below += l.leq(y, x);
      above += l.leq(x, y);
    }
    return std::make_pair(below, above);
  };
  std::vector<std::pair<std::size_t, std::size_t>> sa(n), sb(n);
  for (std::size_t i = 0; i < n; ++i) {
    sa[i] = sig(a, i);
    sb[i] = sig(b, i);
  }
  auto ssa = sa, ssb = sb;
  std::sort(ssa.begin(), ssa.end());
  std::sort(ssb.begin(), ssb.end());
  if (ssa != ssb) return false;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sa[x] < sa[y]; });
  std::vector<int> to(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    std::size_t x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || sb[y] != sa[x]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        std::size_t u = order[j];
        std::size_t v = static_cast<std::size_t>(to[u]);
        ok = a.leq(u, x) == b.leq(v, y) && a.leq(x, u) == b.leq(y, v);
      }
      if (!ok) continue;
      used[y] = 1;
      to[x] = static_cast<int>(y);
      if (self(self, k + 1)) return true;
      used[y] = 0;
      to[x] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

// ---------------- exponentials ----------------

namespace {

FunctorPtr exponential(const Lattice& l, bool normalized) {
  std::string name = l.name() + (normalized ? "^[X]" : "^X");
  return make_functor(
      name,
      [l, normalized](const FinSet& x) {
        std::vector<Element> out;
        const std::size_t n = x.size();
        std::vector<std::size_t> idx(n, 0);
        std::vector<Element> cur(n);
        while (true) {
          std::size_t j = l.bottom();
          for (std::size_t i = 0; i < n; ++i) {
            cur[i] = l.element(idx[i]);
            j = l.join(j, idx[i]);
          }
          if (!normalized || j == l.top()) out.push_back(Element::tuple(cur));
          std::size_t i = 0;
          while (i < n && ++idx[i] == l.size()) idx[i++] = 0;
          if (i == n) break;
        }
        return FinSet(std::move(out));
      },
      [l](const FinFun& f, const Element& e) {
        std::vector<std::size_t> acc(f.cod().size(), l.bottom());
        for (std::size_t i = 0; i < f.dom().size(); ++i)
          acc[f.at_index(i)] = l.join(acc[f.at_index(i)], l.index(e[i]));
        std::vector<Element> v;
        for (auto a : acc) v.push_back(l.element(a));
        return Element::tuple(v);
      });
}

}  // namespace

FunctorPtr normalized_exponential(const Lattice& l) { return exponential(l, true); }
FunctorPtr full_exponential(const Lattice& l) { return exponential(l, false); }

FunctorPtr dirichlet_functor(const DirichletSpec& spec) {
  std::vector<FunctorPtr> terms;
  for (const auto& t : spec.terms)
    terms.push_back(product({constant(t.coeff), t.normalized ? normalized_exponential(t.lattice) : full_exponential(t.lattice)}));
  return sum(terms, describe(spec));
}

std::string describe(const DirichletSpec& spec) {
  std::string s;
  for (const auto& t : spec.terms) {
    if (!s.empty()) s += " + ";
    if (t.coeff.size() != 1) s += std::to_string(t.coeff.size()) + "*";
    s += t.lattice.name() + (t.normalized ? "^[X]" : "^X");
  }
  return s.empty() ? "0" : s;
}

// ---------------- sup-maps between lattices ----------------

bool is_sup_map(const Lattice& l, const Lattice& m, const std::vector<std::size_t>& phi) {
  if (phi.size() != l.size()) return false;
  if (phi[l.bottom()] != m.bottom()) return false;
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b)
      if (phi[l.join(a, b)] != m.join(phi[a], phi[b])) return false;
  return true;
}

bool preserves_top(const Lattice& l, const Lattice& m, const std::vector<std::size_t>& phi) {
  return phi.at(l.top()) == m.top();
}

bool reflects_bottom(const Lattice& l, const Lattice& m, const std::vector<std::size_t>& phi) {
  for (std::size_t a = 0; a < l.size(); ++a)
    if (phi[a] == m.bottom() && a != l.bottom()) return false;
  return true;
}

std::vector<std::vector<std::size_t>> top_preserving_sup_maps(const Lattice& l, const Lattice& m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> phi(l.size(), 0);
  while (true) {
    if (is_sup_map(l, m, phi) && preserves_top(l, m, phi)) out.push_back(phi);
    std::size_t i = 0;
    while (i < phi.size() && ++phi[i] == m.size()) phi[i++] = 0;
    if (i == phi.size()) break;
  }
  return out;
}

TransfPtr lattice_map_transf(const Lattice& l, const Lattice& m, const std::vector<std::size_t>& phi) {
  if (!is_sup_map(l, m, phi)) throw std::invalid_argument("lattice_map_transf: phi does not preserve joins");
  if (!preserves_top(l, m, phi)) throw std::invalid_argument("lattice_map_transf: phi does not preserve top");
  return make_transf(
      normalized_exponential(l), normalized_exponential(m),
      [l, m, phi](const FinSet&, const Element& e) {
        std::vector<Element> v;
        for (const auto& c : e.children()) v.push_back(m.element(phi[l.index(c)]));
        return Element::tuple(v);
      },
      "t_phi");
}

Reconstruction reconstruct_phi(const TransfPtr& t, const Lattice& l, const Lattice& m, int K) {
  Reconstruction out{std::nullopt, Report("reconstruct phi")};
  out.report.param("K", K);
  // component at the 2-element set, on (a, top)
  FinSet two = FinSet::range(2);
  std::vector<std::size_t> phi(l.size());
  for (std::size_t a = 0; a < l.size(); ++a) {
    Element img = t->at(two, Element::tuple({l.element(a), l.element(l.top())}));
    phi[a] = m.index(img[0]);
  }
  bool ok = true;
  for (int n = 0; n <= K && ok; ++n)
    for (const auto& e : t->src()->eval(test_set(static_cast<std::size_t>(n)))) {
      std::vector<Element> v;
      for (const auto& c : e.children()) v.push_back(m.element(phi[l.index(c)]));
      if (t->at(test_set(static_cast<std::size_t>(n)), e) != Element::tuple(v)) {
        out.report.check("t equals postcomposition with phi", false, "at " + e.str());
        ok = false;
        break;
      }
    }
  if (ok) {
    out.report.check("t equals postcomposition with phi", true, "|X| <= " + std::to_string(K));
    out.phi = phi;
  }
  return out;
}

// ---------------- primes and n_* ----------------

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= n; ++k) {
    bool p = true;
    for (auto q : out) {
      if (q * q > k) break;
      if (k % q == 0) {
        p = false;
        break;
      }
    }
    if (p) out.push_back(k);
  }
  return out;
}

std::uint64_t prime_pi(std::uint64_t p) { return primes_upto(p).size(); }

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

Lattice n_star(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("n_star: n must be positive");
  std::vector<Lattice> factors;
  for (auto p : prime_factors(n)) factors.push_back(Lattice::chain(prime_pi(p) + 1));
  Lattice l = Lattice::product_of(factors, std::to_string(n) + "_*");
  return l;
}

DirichletSpec sequential_dirichlet_spec(const std::vector<FinSet>& coeffs) {
  DirichletSpec spec;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].empty()) spec.terms.push_back({coeffs[k], n_star(k + 1), true});
  return spec;
}

FunctorPtr sequential_dirichlet(const std::vector<FinSet>& coeffs) {
  return dirichlet_functor(sequential_dirichlet_spec(coeffs));
}

DirichletSpec zeta_spec(std::size_t n) {
  return sequential_dirichlet_spec(std::vector<FinSet>(n, FinSet::range(1)));
}

FunctorPtr zeta_truncation(std::size_t n) {
  auto f = dirichlet_functor(zeta_spec(n));
  return f;
}

namespace {

// positions of r's and s's coordinates inside (rs)_*: merge by prime, r first on ties
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> merge_positions(std::uint64_t r, std::uint64_t s) {
  auto pr = prime_factors(r), ps = prime_factors(s);
  std::vector<std::size_t> at_r, at_s;
  std::size_t i = 0, j = 0, k = 0;
  while (i < pr.size() || j < ps.size()) {
    if (j == ps.size() || (i < pr.size() && pr[i] <= ps[j])) {
      at_r.push_back(k++);
      ++i;
    } else {
      at_s.push_back(k++);
      ++j;
    }
  }
  return {at_r, at_s};
}

Element merge_coords(const Element& a, const Element& b, const std::vector<std::size_t>& at_a,
                     const std::vector<std::size_t>& at_b) {
  std::vector<Element> v(at_a.size() + at_b.size());
  for (std::size_t i = 0; i < at_a.size(); ++i) v[at_a[i]] = a[i];
  for (std::size_t i = 0; i < at_b.size(); ++i) v[at_b[i]] = b[i];
  return Element::tuple(v);
}

std::uint64_t valuation(std::uint64_t n, std::uint64_t p) {
  std::uint64_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

}  // namespace

Report star_product_check(std::uint64_t r, std::uint64_t s, int K) {
  Report rep("r_*^[X] x s_*^[X] ~ (rs)_*^[X] for r=" + std::to_string(r) + ", s=" + std::to_string(s));
  auto lhs = product({normalized_exponential(n_star(r)), normalized_exponential(n_star(s))});
  auto rhs = normalized_exponential(n_star(r * s));
  auto [at_r, at_s] = merge_positions(r, s);
  Family fam = [at_r = at_r, at_s = at_s](const FinSet&, const Element& e) {
    std::vector<Element> v;
    for (std::size_t x = 0; x < e[0].arity(); ++x) v.push_back(merge_coords(e[0][x], e[1][x], at_r, at_s));
    return Element::tuple(v);
  };
  TautOptions opt;
  opt.K = K;
  rep.add(iso_witness(lhs, rhs, opt, fam));
  return rep;
}

Report sequential_product_check(const std::vector<FinSet>& c, const std::vector<FinSet>& d, int K) {
  Report rep("sequential Dirichlet product closure");
  auto cs = sequential_dirichlet_spec(c), ds = sequential_dirichlet_spec(d);
  // term index -> n for each side
  std::vector<std::uint64_t> cn, dn;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].empty()) cn.push_back(k + 1);
  for (std::size_t k = 0; k < d.size(); ++k)
    if (!d[k].empty()) dn.push_back(k + 1);
  std::size_t maxn = c.size() * d.size();
  std::vector<std::vector<Element>> coeff(maxn);
  for (auto r : cn)
    for (auto s : dn)
      for (const auto& x : c[r - 1])
        for (const auto& y : d[s - 1]) coeff[r * s - 1].push_back(Element::tuple({Element::atom(r), x, y}));
  std::vector<FinSet> rc;
  for (auto& v : coeff) rc.emplace_back(v);
  auto rs = sequential_dirichlet_spec(rc);
  std::map<std::uint64_t, std::size_t> term_of_n;
  {
    std::size_t t = 0;
    for (std::size_t k = 0; k < rc.size(); ++k)
      if (!rc[k].empty()) term_of_n[k + 1] = t++;
  }
  auto lhs = product({dirichlet_functor(cs), dirichlet_functor(ds)});
  auto rhs = dirichlet_functor(rs);
  Family fam = [cn, dn, term_of_n](const FinSet&, const Element& e) {
    std::size_t i = sum_index(e[0]), j = sum_index(e[1]);
    std::uint64_t r = cn[i], s = dn[j];
    auto [at_r, at_s] = merge_positions(r, s);
    const Element& a = e[0].inner();
    const Element& b = e[1].inner();
    std::vector<Element> phi;
    for (std::size_t x = 0; x < a[1].arity(); ++x) phi.push_back(merge_coords(a[1][x], b[1][x], at_r, at_s));
    Element coef = Element::tuple({Element::atom(r), a[0], b[0]});
    return sum_element(term_of_n.at(r * s), Element::tuple({coef, Element::tuple(phi)}));
  };
  TautOptions opt;
  opt.K = K;
  rep.add(iso_witness(lhs, rhs, opt, fam));
  return rep;
}

Report euler_check(const std::vector<std::uint64_t>& primes, std::uint64_t bound, int K) {
  Report rep("Euler product, P = {" + [&] {
    std::string s;
    for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? "," : "") + std::to_string(primes[i]);
    return s;
  }() + "}, N = " + std::to_string(bound));
  auto ps = primes;
  std::sort(ps.begin(), ps.end());
  // n in P* up to the bound
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    std::uint64_t m = n;
    for (auto p : ps)
      while (m % p == 0) m /= p;
    if (m == 1) ns.push_back(n);
  }
  std::vector<FunctorPtr> lhs_terms;
  for (auto n : ns) lhs_terms.push_back(normalized_exponential(n_star(n)));
  auto lhs = sum(lhs_terms, "sum n_*^[X]");

  // product side: tuples over p of (k_p, phi_p) with prod p^{k_p} <= bound
  std::vector<std::vector<std::uint64_t>> exps;
  for (auto n : ns) {
    std::vector<std::uint64_t> k;
    for (auto p : ps) k.push_back(valuation(n, p));
    exps.push_back(k);
  }
  std::map<std::pair<std::uint64_t, std::uint64_t>, FunctorPtr> exp_of;  // (p, k) -> (p^k)_*^[X]
  for (const auto& k : exps)
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto key = std::make_pair(ps[i], k[i]);
      if (!exp_of.count(key)) {
        std::uint64_t pk = 1;
        for (std::uint64_t t = 0; t < k[i]; ++t) pk *= ps[i];
        exp_of[key] = normalized_exponential(n_star(pk));
      }
    }
  auto rhs = make_functor(
      "bounded Euler product",
      [ps, exps, exp_of](const FinSet& x) {
        std::vector<Element> out;
        for (const auto& k : exps) {
          std::vector<FinSet> parts;
          for (std::size_t i = 0; i < ps.size(); ++i) parts.push_back(exp_of.at({ps[i], k[i]})->eval(x));
          std::vector<std::size_t> idx(parts.size(), 0);
          bool empty = false;
          for (const auto& p : parts) empty = empty || p.empty();
          if (empty) continue;
          while (true) {
            std::vector<Element> v;
            for (std::size_t i = 0; i < parts.size(); ++i)
              v.push_back(sum_element(k[i], parts[i][idx[i]]));
            out.push_back(Element::tuple(v));
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == parts[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
          }
        }
        return FinSet(std::move(out));
      },
      [ps, exp_of](const FinFun& f, const Element& e) {
        std::vector<Element> v;
        for (std::size_t i = 0; i < ps.size(); ++i) {
          std::size_t k = sum_index(e[i]);
          v.push_back(sum_element(k, exp_of.at({ps[i], k})->apply(f, e[i].inner())));
        }
        return Element::tuple(v);
      });

  Family fam = [ns, exps, ps](const FinSet&, const Element& e) {
    std::size_t t = sum_index(e);
    const auto& k = exps[t];
    const Element& phi = e.inner();
    std::vector<Element> out;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::vector<Element> block;
      for (std::size_t x = 0; x < phi.arity(); ++x) {
        std::vector<Element> coords(phi[x].children().begin() + static_cast<long>(offset),
                                    phi[x].children().begin() + static_cast<long>(offset + k[i]));
        block.push_back(Element::tuple(coords));
      }
      offset += k[i];
      out.push_back(sum_element(k[i], Element::tuple(block)));
    }
    return Element::tuple(out);
  };
  TautOptions opt;
  opt.K = K;
  rep.param("terms", static_cast<std::int64_t>(ns.size()));
  rep.add(iso_witness(lhs, rhs, opt, fam));
  return rep;
}

Report lattice_iso_unique_factorization(std::size_t max_size) {
  Report rep("products of chains: isomorphic iff equal factor multisets");
  rep.param("max_size", static_cast<std::int64_t>(max_size));
  // multisets of chain lengths >= 2, nonincreasing, with product <= max_size
  std::vector<std::vector<std::size_t>> ms;
  auto rec = [&](auto&& self, std::vector<std::size_t>& cur, std::size_t prod, std::size_t cap) -> void {
    if (!cur.empty()) ms.push_back(cur);
    for (std::size_t c = 2; c <= cap && prod * c <= max_size; ++c) {
      cur.push_back(c);
      self(self, cur, prod * c, c);
      cur.pop_back();
    }
  };
  std::vector<std::size_t> cur;
  rec(rec, cur, 1, max_size);
  auto build = [](std::vector<std::size_t> m, bool reversed) {
    if (reversed) std::reverse(m.begin(), m.end());
    std::vector<Lattice> f;
    for (auto c : m) f.push_back(Lattice::chain(c));
    return Lattice::product_of(f);
  };
  std::size_t pairs = 0, isos = 0;
  bool ok = true;
  for (std::size_t i = 0; i < ms.size() && ok; ++i) {
    Lattice a = build(ms[i], false);
    Lattice a_rev = build(ms[i], true);
    if (!lattices_isomorphic(a, a_rev)) {
      rep.check("reordered factors are isomorphic", false, a.name());
      ok = false;
    }
    for (std::size_t j = i + 1; j < ms.size() && ok; ++j) {
      if (a.size() != build(ms[j], false).size()) continue;
      ++pairs;
      if (lattices_isomorphic(a, build(ms[j], false))) {
        ++isos;
        rep.check("distinct multisets give non-isomorphic products", false,
                  a.name() + " ~ " + build(ms[j], false).name());
        ok = false;
      }
    }
  }
  if (ok)
    rep.check("no isomorphism between distinct multisets", true,
              std::to_string(ms.size()) + " multisets, " + std::to_string(pairs) + " equal-size pairs searched");
  return rep;
}

}  // namespace fdiff
