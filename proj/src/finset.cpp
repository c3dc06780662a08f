#include "fdiff/finset.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdiff {

namespace {
const std::shared_ptr<const std::vector<Element>>& empty_vec() {
  static const auto v = std::make_shared<const std::vector<Element>>();
  return v;
}
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace

FinSet::FinSet() : e_(empty_vec()) { rehash(); }

FinSet::FinSet(std::vector<Element> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  e_ = std::make_shared<const std::vector<Element>>(std::move(elems));
  rehash();
}

FinSet FinSet::from_sorted(std::vector<Element> elems) {
  FinSet s;
  s.e_ = std::make_shared<const std::vector<Element>>(std::move(elems));
  s.rehash();
  return s;
}

FinSet FinSet::range(std::size_t n) {
  std::vector<Element> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(Element::atom(i));
  return from_sorted(std::move(v));
}

void FinSet::rehash() {
  std::size_t h = e_->size();
  for (const auto& x : *e_) h = mix(h, x.hash());
  h_ = h;
}

std::optional<std::size_t> FinSet::index_of(const Element& x) const {
  auto it = std::lower_bound(e_->begin(), e_->end(), x);
  if (it == e_->end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - e_->begin());
}

std::size_t FinSet::index(const Element& x) const {
  auto i = index_of(x);
  if (!i) throw std::out_of_range("element " + x.str() + " not in " + str());
  return *i;
}

bool FinSet::subset_of(const FinSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

std::string FinSet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += (*e_)[i].str();
  }
  return s + "}";
}

FinSet set_union(const FinSet& a, const FinSet& b) {
  std::vector<Element> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FinSet::from_sorted(std::move(out));
}
FinSet set_difference(const FinSet& a, const FinSet& b) {
  std::vector<Element> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FinSet::from_sorted(std::move(out));
}
FinSet set_intersection(const FinSet& a, const FinSet& b) {
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FinSet::from_sorted(std::move(out));
}

// ---- FinFun ----

FinFun::FinFun(FinSet dom, FinSet cod, std::vector<std::uint32_t> img)
    : dom_(std::move(dom)), cod_(std::move(cod)), img_(std::move(img)) {
  if (img_.size() != dom_.size()) throw std::invalid_argument("FinFun: table size != |dom|");
  for (auto i : img_)
    if (i >= cod_.size()) throw std::invalid_argument("FinFun: image index out of codomain");
}

FinFun FinFun::from_elements(const FinSet& dom, const FinSet& cod, const std::vector<Element>& images) {
  std::vector<std::uint32_t> t(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    auto j = cod.index_of(images[i]);
    if (!j)
      throw std::invalid_argument("FinFun: image " + images[i].str() + " of " + dom[i].str() +
                                  " outside codomain");
    t[i] = static_cast<std::uint32_t>(*j);
  }
  return FinFun(dom, cod, std::move(t));
}

FinFun FinFun::identity(const FinSet& x) {
  std::vector<std::uint32_t> t(x.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint32_t>(i);
  return FinFun(x, x, std::move(t));
}

FinFun FinFun::inclusion(const FinSet& sub, const FinSet& x) {
  std::vector<std::uint32_t> t(sub.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    while (j < x.size() && x[j] < sub[i]) ++j;
    if (j == x.size() || x[j] != sub[i])
      throw std::invalid_argument("inclusion: " + sub.str() + " not a subset of " + x.str());
    t[i] = static_cast<std::uint32_t>(j);
  }
  return FinFun(sub, x, std::move(t));
}

const Element& FinFun::operator()(const Element& x) const { return cod_[img_[dom_.index(x)]]; }

bool FinFun::injective() const {
  std::vector<char> seen(cod_.size(), 0);
  for (auto i : img_) {
    if (seen[i]) return false;
    seen[i] = 1;
  }
  return true;
}

bool FinFun::surjective() const {
  std::vector<char> seen(cod_.size(), 0);
  std::size_t hit = 0;
  for (auto i : img_)
    if (!seen[i]) {
      seen[i] = 1;
      ++hit;
    }
  return hit == cod_.size();
}

FinSet FinFun::image() const {
  std::vector<char> seen(cod_.size(), 0);
  for (auto i : img_) seen[i] = 1;
  std::vector<Element> out;
  for (std::size_t i = 0; i < cod_.size(); ++i)
    if (seen[i]) out.push_back(cod_[i]);
  return FinSet::from_sorted(std::move(out));
}

std::optional<FinFun> FinFun::inverse() const {
  if (!bijective()) return std::nullopt;
  std::vector<std::uint32_t> t(cod_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) t[img_[i]] = static_cast<std::uint32_t>(i);
  return FinFun(cod_, dom_, std::move(t));
}

std::size_t FinFun::hash() const {
  std::size_t h = mix(dom_.hash(), cod_.hash());
  for (auto i : img_) h = mix(h, i);
  return h;
}

std::string FinFun::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (i) s += ", ";
    s += dom_[i].str() + "->" + cod_[img_[i]].str();
  }
  return s + "}";
}

FinFun compose(const FinFun& g, const FinFun& f) {
  if (f.cod() != g.dom()) throw std::invalid_argument("compose: codomain/domain mismatch");
  std::vector<std::uint32_t> t(f.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.at_index(f.at_index(i));
  return FinFun(f.dom(), g.cod(), std::move(t));
}

std::pair<FinFun, FinFun> image_factorize(const FinFun& f) {
  FinSet im = f.image();
  FinFun mono = FinFun::inclusion(im, f.cod());
  std::vector<std::uint32_t> back(f.cod().size(), 0);
  for (std::size_t i = 0; i < im.size(); ++i) back[mono.at_index(i)] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> t(f.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = back[f.at_index(i)];
  return {FinFun(f.dom(), im, std::move(t)), mono};
}

FinSet inverse_image(const FinFun& f, const FinSet& sub) {
  if (!sub.subset_of(f.cod()))
    throw std::invalid_argument("inverse_image: " + sub.str() + " not a subset of the codomain");
  std::vector<char> in(f.cod().size(), 0);
  for (const auto& s : sub) in[f.cod().index(s)] = 1;
  std::vector<Element> out;
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (in[f.at_index(i)]) out.push_back(f.dom()[i]);
  return FinSet::from_sorted(std::move(out));
}

FinFun restrict(const FinFun& f, const FinSet& sub) {
  return compose(f, FinFun::inclusion(sub, f.dom()));
}

// ---- fresh points ----

Element fresh(const FinSet& x) {
  if (!x.contains(Element::star())) return Element::star();
  for (std::uint64_t k = 1;; ++k) {
    Element c = Element::tag("*", Element::atom(k));
    if (!x.contains(c)) return c;
  }
}

FinSet succ(const FinSet& x) {
  std::vector<Element> v = x.elems();
  v.push_back(fresh(x));
  return FinSet(std::move(v));
}

FinFun succ_map(const FinFun& f) {
  FinSet sx = succ(f.dom()), sy = succ(f.cod());
  Element fx = fresh(f.dom()), fy = fresh(f.cod());
  std::vector<std::uint32_t> t(sx.size());
  for (std::size_t i = 0; i < sx.size(); ++i) {
    const Element& e = sx[i];
    t[i] = static_cast<std::uint32_t>(e == fx ? sy.index(fy) : sy.index(f(e)));
  }
  return FinFun(sx, sy, std::move(t));
}

FinFun succ_inclusion(const FinSet& x) { return FinFun::inclusion(x, succ(x)); }

std::vector<Element> fresh_chain(const FinSet& x, std::size_t n) {
  std::vector<Element> out;
  FinSet cur = x;
  for (std::size_t i = 0; i < n; ++i) {
    Element f = fresh(cur);
    out.push_back(f);
    cur = succ(cur);
  }
  return out;
}

FinSet succ_n(const FinSet& x, std::size_t n) {
  FinSet cur = x;
  for (std::size_t i = 0; i < n; ++i) cur = succ(cur);
  return cur;
}

Element pointed(const Element& a) { return Element::tag("@", a); }

FinSet plus_pointed(const FinSet& x, const FinSet& a) {
  std::vector<Element> v = x.elems();
  for (const auto& p : a) {
    Element t = pointed(p);
    if (x.contains(t)) throw std::invalid_argument("plus_pointed: tagged point already in X");
    v.push_back(t);
  }
  return FinSet(std::move(v));
}

// ---- enumeration ----

std::vector<FinFun> all_functions(const FinSet& x, const FinSet& y) {
  std::vector<FinFun> out;
  if (y.empty() && !x.empty()) return out;
  std::vector<std::uint32_t> t(x.size(), 0);
  while (true) {
    out.emplace_back(x, y, t);
    std::size_t i = 0;
    while (i < t.size() && ++t[i] == y.size()) t[i++] = 0;
    if (i == t.size()) break;
  }
  return out;
}

std::vector<FinFun> enumerate_monos(std::size_t n, const FinSet& x) {
  std::vector<FinFun> out;
  FinSet dom = FinSet::range(n);
  std::vector<std::uint32_t> t(n);
  std::vector<char> used(x.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      out.emplace_back(dom, x, t);
      return;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      t[pos] = static_cast<std::uint32_t>(j);
      self(self, pos + 1);
      used[j] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<FinFun> enumerate_surjections(std::size_t m, std::size_t n) {
  std::vector<FinFun> out;
  FinSet dom = FinSet::range(m), cod = FinSet::range(n);
  for (auto& f : all_functions(dom, cod))
    if (f.surjective()) out.push_back(f);
  return out;
}

std::vector<FinSet> all_subsets(const FinSet& x) {
  std::vector<FinSet> out;
  if (x.size() > 24) throw std::invalid_argument("all_subsets: set too large");
  std::size_t n = x.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<Element> v;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) v.push_back(x[i]);
    out.push_back(FinSet::from_sorted(std::move(v)));
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

std::uint64_t stirling2(std::uint64_t n, std::uint64_t k) {
  std::vector<std::vector<std::uint64_t>> s(n + 1, std::vector<std::uint64_t>(k + 1, 0));
  s[0][0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = 1; j <= k; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  return s[n][k];
}

}  // namespace fdiff
