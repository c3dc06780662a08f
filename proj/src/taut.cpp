#include "fdiff/taut.hpp"

#include <random>
#include <sstream>
#include <unordered_map>

namespace fdiff {

FinSet test_set(std::size_t n) { return FinSet::range(n); }

namespace {

// Checks that P -> A x_C B, w |-> (p w, q w), is a bijection. Returns a description on failure.
std::optional<std::string> pullback_failure(const FinFun& p, const FinFun& q, const FinFun& a, const FinFun& b) {
  const std::size_t nc = a.cod().size();
  for (std::size_t w = 0; w < p.dom().size(); ++w)
    if (a.at_index(p.at_index(w)) != b.at_index(q.at_index(w)))
      return "square does not commute at " + p.dom()[w].str();
  // number of pairs (x, y) with a x = b y
  std::vector<std::uint64_t> over_a(nc, 0);
  for (std::size_t x = 0; x < a.dom().size(); ++x) ++over_a[a.at_index(x)];
  std::uint64_t pairs = 0;
  for (std::size_t y = 0; y < b.dom().size(); ++y) pairs += over_a[b.at_index(y)];
  std::unordered_map<std::uint64_t, std::size_t> seen;
  const std::uint64_t nb = b.dom().size();
  for (std::size_t w = 0; w < p.dom().size(); ++w) {
    std::uint64_t key = static_cast<std::uint64_t>(p.at_index(w)) * (nb + 1) + q.at_index(w);
    auto [it, fresh] = seen.emplace(key, w);
    if (!fresh)
      return "two elements " + p.dom()[it->second].str() + " and " + p.dom()[w].str() + " over the pair (" +
             a.dom()[p.at_index(w)].str() + ", " + b.dom()[q.at_index(w)].str() + ")";
  }
  if (seen.size() != pairs) {
    // find an uncovered pair
    for (std::size_t x = 0; x < a.dom().size(); ++x)
      for (std::size_t y = 0; y < b.dom().size(); ++y)
        if (a.at_index(x) == b.at_index(y) && !seen.count(static_cast<std::uint64_t>(x) * (nb + 1) + y))
          return "pair (" + a.dom()[x].str() + ", " + b.dom()[y].str() + ") has no preimage; |P| = " +
                 std::to_string(p.dom().size()) + ", |pullback| = " + std::to_string(pairs);
  }
  return std::nullopt;
}

FinSet random_subset(const FinSet& x, std::mt19937_64& rng) {
  std::vector<Element> v;
  for (const auto& e : x)
    if (rng() & 1) v.push_back(e);
  return FinSet::from_sorted(std::move(v));
}

FinFun random_function(const FinSet& x, const FinSet& y, std::mt19937_64& rng) {
  std::vector<std::uint32_t> t(x.size());
  for (auto& v : t) v = static_cast<std::uint32_t>(rng() % y.size());
  return FinFun(x, y, t);
}

// every (X, X0 subset of X, Y, f : Y -> X) up to the option bounds
template <class Fn>
void for_each_inverse_image_square(const TautOptions& opt, Fn&& fn) {
  int ex = std::min(opt.exhaustive, opt.K);
  for (int nx = 0; nx <= ex; ++nx) {
    FinSet x = test_set(nx);
    auto subs = all_subsets(x);
    for (int ny = 0; ny <= ex; ++ny) {
      auto fs = all_functions(test_set(ny), x);
      for (const auto& x0 : subs)
        for (const auto& f : fs)
          if (!fn(x, x0, f)) return;
    }
  }
  std::mt19937_64 rng(opt.seed);
  for (int nx = ex + 1; nx <= opt.K; ++nx) {
    FinSet x = test_set(nx);
    for (int s = 0; s < opt.samples; ++s) {
      int ny = static_cast<int>(rng() % static_cast<std::uint64_t>(opt.K + 1));
      FinSet x0 = random_subset(x, rng);
      FinFun f = random_function(test_set(ny), x, rng);
      if (!fn(x, x0, f)) return;
    }
  }
}

template <class Fn>
void for_each_function(const TautOptions& opt, Fn&& fn) {
  int ex = std::min(opt.exhaustive, opt.K);
  for (int nx = 0; nx <= ex; ++nx)
    for (int ny = 0; ny <= ex; ++ny)
      for (const auto& f : all_functions(test_set(nx), test_set(ny)))
        if (!fn(f)) return;
  std::mt19937_64 rng(opt.seed ^ 0x5bd1e995);
  for (int n = ex + 1; n <= opt.K; ++n)
    for (int s = 0; s < opt.samples; ++s) {
      int ny = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.K));
      bool flip = rng() & 1;
      FinSet a = test_set(n), b = test_set(static_cast<std::size_t>(ny));
      if (flip && n > 0) std::swap(a, b);
      if (b.empty() && !a.empty()) continue;
      if (!fn(random_function(a, b, rng))) return;
    }
}

void stamp(Report& r, const TautOptions& opt) {
  r.param("K", opt.K).param("seed", static_cast<std::int64_t>(opt.seed));
}

}  // namespace

Report check_functorial(const FunctorPtr& f, const TautOptions& opt) {
  Report r("functorial " + f->name());
  stamp(r, opt);
  std::size_t cases = 0;
  bool ok = true;
  for (int n = 0; n <= std::min(opt.K, 3) && ok; ++n) {
    FinSet x = test_set(n);
    FinFun id = FinFun::identity(x);
    ++cases;
    if (!(f->map(id) == FinFun::identity(f->eval(x)))) {
      ok = false;
      r.check("F(id) = id", false, "at |X| = " + std::to_string(n));
    }
  }
  for (int a = 0; a <= 2 && ok; ++a)
    for (int b = 0; b <= 2 && ok; ++b)
      for (int c = 0; c <= 2 && ok; ++c)
        for (const auto& g1 : all_functions(test_set(a), test_set(b)))
          for (const auto& g2 : all_functions(test_set(b), test_set(c))) {
            ++cases;
            if (!(f->map(compose(g2, g1)) == compose(f->map(g2), f->map(g1)))) {
              ok = false;
              r.check("F(g f) = F(g) F(f)", false, "f = " + g1.str() + ", g = " + g2.str());
              break;
            }
          }
  if (ok) r.check("identities and composites", true, std::to_string(cases) + " cases");
  return r;
}

Report check_taut(const FunctorPtr& f, const TautOptions& opt) {
  Stopwatch sw;
  Report r("taut " + f->name());
  stamp(r, opt);
  std::size_t squares = 0;
  bool ok = true;
  for_each_inverse_image_square(opt, [&](const FinSet& x, const FinSet& x0, const FinFun& g) {
    ++squares;
    FinSet pre = inverse_image(g, x0);
    FinFun a = f->map(FinFun::inclusion(x0, x));
    FinFun b = f->map(g);
    FinFun p = f->map(FinFun::from_elements(pre, x0, [&] {
      std::vector<Element> v;
      for (const auto& e : pre) v.push_back(g(e));
      return v;
    }()));
    FinFun q = f->map(FinFun::inclusion(pre, g.dom()));
    if (auto why = pullback_failure(p, q, a, b)) {
      ok = false;
      r.check("inverse-image square preserved", false,
              "X = " + x.str() + ", X0 = " + x0.str() + ", f = " + g.str() + ": " + *why);
      return false;
    }
    return true;
  });
  if (ok) {
    r.check("inverse-image squares preserved", true, std::to_string(squares) + " squares");
    f->certify(opt.K, "check_taut");
  }
  r.set_millis(sw.millis());
  return r;
}

Report check_natural(const TransfPtr& t, const TautOptions& opt) {
  Report r("natural " + t->name());
  stamp(r, opt);
  std::size_t cases = 0;
  bool ok = true;
  for_each_function(opt, [&](const FinFun& g) {
    ++cases;
    FinFun lhs = compose(t->component(g.cod()), t->src()->map(g));
    FinFun rhs = compose(t->dst()->map(g), t->component(g.dom()));
    if (!(lhs == rhs)) {
      for (std::size_t i = 0; i < lhs.dom().size(); ++i)
        if (lhs.at_index(i) != rhs.at_index(i)) {
          r.check("naturality square commutes", false,
                  "f = " + g.str() + " at " + lhs.dom()[i].str() + ": " + lhs.image_of_index(i).str() +
                      " vs " + rhs.image_of_index(i).str());
          break;
        }
      ok = false;
      return false;
    }
    return true;
  });
  if (ok) r.check("naturality squares commute", true, std::to_string(cases) + " functions");
  return r;
}

Report check_taut_transf(const TransfPtr& t, const TautOptions& opt) {
  Stopwatch sw;
  Report r("taut transformation " + t->name());
  stamp(r, opt);
  Report nat = check_natural(t, opt);
  bool ok = nat.passed();
  r.add(std::move(nat));
  std::size_t squares = 0;
  if (ok) {
    std::mt19937_64 rng(opt.seed);
    auto one = [&](const FinSet& x, const FinSet& x0) {
      ++squares;
      FinFun m = FinFun::inclusion(x0, x);
      FinFun p = t->src()->map(m);
      FinFun q = t->component(x0);
      FinFun a = t->component(x);
      FinFun b = t->dst()->map(m);
      if (auto why = pullback_failure(p, q, a, b)) {
        r.check("naturality square at mono is a pullback", false,
                "X0 = " + x0.str() + " in X = " + x.str() + ": " + *why);
        return false;
      }
      return true;
    };
    int ex = std::min(opt.exhaustive, opt.K);
    for (int n = 0; n <= ex && ok; ++n)
      for (const auto& x0 : all_subsets(test_set(n)))
        if (!one(test_set(n), x0)) {
          ok = false;
          break;
        }
    for (int n = ex + 1; n <= opt.K && ok; ++n)
      for (int s = 0; s < opt.samples && ok; ++s) ok = one(test_set(n), random_subset(test_set(n), rng));
    if (ok) r.check("naturality squares at monos are pullbacks", true, std::to_string(squares) + " squares");
  }
  if (r.passed()) t->certify();
  r.set_millis(sw.millis());
  return r;
}

Report iso_witness(const FunctorPtr& f, const FunctorPtr& g, const TautOptions& opt,
                   const std::optional<Family>& family) {
  Stopwatch sw;
  Report r("iso " + f->name() + " ~ " + g->name());
  stamp(r, opt);
  if (!family) {
    bool ok = true;
    for (int n = 0; n <= opt.K; ++n) {
      auto a = f->eval(test_set(n)).size(), b = g->eval(test_set(n)).size();
      if (a != b) {
        r.check("cardinalities agree", false,
                "|X| = " + std::to_string(n) + ": " + std::to_string(a) + " vs " + std::to_string(b));
        ok = false;
        break;
      }
    }
    if (ok) {
      r.check("cardinalities agree", true, "|X| <= " + std::to_string(opt.K));
      r.note("cardinality-consistent");
    }
    r.set_millis(sw.millis());
    return r;
  }
  auto t = make_transf(f, g, *family, "iso");
  bool ok = true;
  for (int n = 0; n <= opt.K && ok; ++n) {
    FinSet x = test_set(n);
    FinFun c;
    try {
      c = t->component(x);
    } catch (const std::exception& e) {
      r.check("family lands in the target", false, "|X| = " + std::to_string(n) + ": " + e.what());
      ok = false;
      break;
    }
    if (!c.bijective()) {
      std::ostringstream w;
      w << "|X| = " << n << ": |F X| = " << c.dom().size() << ", |G X| = " << c.cod().size()
        << (c.injective() ? ", not surjective" : ", not injective");
      r.check("component bijective", false, w.str());
      ok = false;
    }
  }
  if (ok) r.check("components bijective", true, "|X| <= " + std::to_string(opt.K));
  if (ok) {
    Report nat = check_natural(t, opt);
    r.add(std::move(nat));
  }
  r.set_millis(sw.millis());
  return r;
}

Cancellation cancel(const FunctorPtr& f, const FunctorPtr& g, const FunctorPtr& h, const Family& iso,
                    const TautOptions& opt) {
  Cancellation out{nullptr, Report("cancellation of " + f->name())};
  FunctorPtr fg = sum({f, g}), fh = sum({f, h});
  out.report.add(iso_witness(fg, fh, opt, iso));
  bool commutes = true;
  for (int n = 0; n <= opt.K && commutes; ++n)
    for (const auto& e : f->eval(test_set(n)))
      if (iso(test_set(n), sum_element(0, e)) != sum_element(0, e)) {
        out.report.check("iso commutes with the F injections", false, e.str());
        commutes = false;
        break;
      }
  if (commutes) out.report.check("iso commutes with the F injections", true);
  out.restricted = [iso](const FinSet& x, const Element& d) {
    Element img = iso(x, sum_element(1, d));
    if (sum_index(img) != 1) throw std::logic_error("cancellation: G lands in the F summand");
    return img.inner();
  };
  out.report.add(iso_witness(g, h, opt, out.restricted));
  return out;
}

}  // namespace fdiff
