#include "fdiff/functor.hpp"

#include <stdexcept>

namespace fdiff {

namespace {
constexpr std::size_t kMapCacheCap = 1 << 15;
}

FinSet Functor::eval(const FinSet& x) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = eval_cache_.find(x);
    if (it != eval_cache_.end()) return it->second;
  }
  FinSet v = objects(x);
  std::lock_guard<std::mutex> lock(mu_);
  return eval_cache_.emplace(x, v).first->second;
}

FinFun Functor::map(const FinFun& f) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_cache_.find(f);
    if (it != map_cache_.end()) return it->second;
  }
  FinFun v = arrows(f);
  std::lock_guard<std::mutex> lock(mu_);
  if (map_cache_.size() >= kMapCacheCap) map_cache_.clear();
  return map_cache_.emplace(f, v).first->second;
}

FinFun Functor::arrows(const FinFun& f) const {
  FinSet src = eval(f.dom()), dst = eval(f.cod());
  std::vector<Element> img;
  img.reserve(src.size());
  for (const auto& e : src) img.push_back(apply(f, e));
  return FinFun::from_elements(src, dst, img);
}

void Functor::certify(int bound, const std::string& how) const {
  std::lock_guard<std::mutex> lock(mu_);
  cert_how_ = how;
  cert_bound_.store(bound);
}

void Functor::clear_caches() const {
  std::lock_guard<std::mutex> lock(mu_);
  eval_cache_.clear();
  map_cache_.clear();
}

namespace {

class LambdaFunctor final : public Functor {
 public:
  LambdaFunctor(std::string name, ObjectsFn o, ApplyFn a)
      : Functor(std::move(name)), o_(std::move(o)), a_(std::move(a)) {}
  Element apply(const FinFun& f, const Element& e) const override { return a_(f, e); }

 protected:
  FinSet objects(const FinSet& x) const override { return o_(x); }

 private:
  ObjectsFn o_;
  ApplyFn a_;
};

class IdentityFunctor final : public Functor {
 public:
  IdentityFunctor() : Functor("X") {}
  Element apply(const FinFun& f, const Element& e) const override { return f(e); }

 protected:
  FinSet objects(const FinSet& x) const override { return x; }
  FinFun arrows(const FinFun& f) const override { return f; }
};

class ConstantFunctor final : public Functor {
 public:
  ConstantFunctor(FinSet c, std::string name) : Functor(std::move(name)), c_(std::move(c)) {}
  Element apply(const FinFun&, const Element& e) const override { return e; }

 protected:
  FinSet objects(const FinSet&) const override { return c_; }
  FinFun arrows(const FinFun&) const override { return FinFun::identity(c_); }

 private:
  FinSet c_;
};

class SuccessorFunctor final : public Functor {
 public:
  SuccessorFunctor() : Functor("S") {}
  Element apply(const FinFun& f, const Element& e) const override { return map(f)(e); }

 protected:
  FinSet objects(const FinSet& x) const override { return succ(x); }
  FinFun arrows(const FinFun& f) const override { return succ_map(f); }
};

class SumFunctor final : public Functor {
 public:
  SumFunctor(std::vector<FunctorPtr> t, std::string name) : Functor(std::move(name)), t_(std::move(t)) {}
  Element apply(const FinFun& f, const Element& e) const override {
    std::size_t i = sum_index(e);
    return sum_element(i, t_.at(i)->apply(f, e.inner()));
  }

 protected:
  FinSet objects(const FinSet& x) const override {
    std::vector<Element> out;
    for (std::size_t i = 0; i < t_.size(); ++i)
      for (const auto& e : t_[i]->eval(x)) out.push_back(sum_element(i, e));
    return FinSet(std::move(out));
  }
  FinFun arrows(const FinFun& f) const override {
    FinSet src = eval(f.dom()), dst = eval(f.cod());
    std::vector<Element> img;
    img.reserve(src.size());
    std::vector<FinFun> parts;
    for (const auto& t : t_) parts.push_back(t->map(f));
    for (const auto& e : src) {
      std::size_t i = sum_index(e);
      img.push_back(sum_element(i, parts[i](e.inner())));
    }
    return FinFun::from_elements(src, dst, img);
  }

 private:
  std::vector<FunctorPtr> t_;
};

class ProductFunctor final : public Functor {
 public:
  ProductFunctor(std::vector<FunctorPtr> t, std::string name) : Functor(std::move(name)), t_(std::move(t)) {}
  Element apply(const FinFun& f, const Element& e) const override {
    std::vector<Element> v(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) v[i] = t_[i]->apply(f, e[i]);
    return Element::tuple(v);
  }

 protected:
  FinSet objects(const FinSet& x) const override {
    std::vector<FinSet> parts;
    for (const auto& t : t_) parts.push_back(t->eval(x));
    std::vector<Element> out;
    std::vector<std::size_t> idx(parts.size(), 0);
    for (const auto& p : parts)
      if (p.empty()) return FinSet();
    std::vector<Element> cur(parts.size());
    while (true) {
      for (std::size_t i = 0; i < parts.size(); ++i) cur[i] = parts[i][idx[i]];
      out.push_back(Element::tuple(cur));
      // odometer over the first coordinate slowest, so output stays sorted
      std::size_t i = parts.size();
      while (i > 0) {
        --i;
        if (++idx[i] < parts[i].size()) break;
        idx[i] = 0;
        if (i == 0) return FinSet::from_sorted(std::move(out));
      }
      if (parts.empty()) return FinSet::from_sorted(std::move(out));
    }
  }
  FinFun arrows(const FinFun& f) const override {
    FinSet src = eval(f.dom()), dst = eval(f.cod());
    std::vector<FinFun> parts;
    for (const auto& t : t_) parts.push_back(t->map(f));
    std::vector<Element> img;
    img.reserve(src.size());
    std::vector<Element> v(t_.size());
    for (const auto& e : src) {
      for (std::size_t i = 0; i < t_.size(); ++i) v[i] = parts[i](e[i]);
      img.push_back(Element::tuple(v));
    }
    return FinFun::from_elements(src, dst, img);
  }

 private:
  std::vector<FunctorPtr> t_;
};

class ComposeFunctor final : public Functor {
 public:
  ComposeFunctor(FunctorPtr g, FunctorPtr f)
      : Functor(g->name() + " o " + f->name()), g_(std::move(g)), f_(std::move(f)) {}
  Element apply(const FinFun& h, const Element& e) const override { return g_->apply(f_->map(h), e); }

 protected:
  FinSet objects(const FinSet& x) const override { return g_->eval(f_->eval(x)); }
  FinFun arrows(const FinFun& h) const override { return g_->map(f_->map(h)); }

 private:
  FunctorPtr g_, f_;
};

std::string join_names(const std::vector<FunctorPtr>& fs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) s += sep;
    s += fs[i]->name();
  }
  return s;
}

}  // namespace

FunctorPtr make_functor(std::string name, ObjectsFn objects, ApplyFn apply) {
  return std::make_shared<LambdaFunctor>(std::move(name), std::move(objects), std::move(apply));
}

FunctorPtr identity() {
  return std::make_shared<IdentityFunctor>();
}

FunctorPtr constant(const FinSet& c, const std::string& name) {
  return std::make_shared<ConstantFunctor>(c, name.empty() ? "C{" + std::to_string(c.size()) + "}" : name);
}

FunctorPtr constant(std::size_t n) { return constant(FinSet::range(n)); }

FunctorPtr empty_functor() { return constant(FinSet(), "0"); }

FunctorPtr successor() { return std::make_shared<SuccessorFunctor>(); }

FunctorPtr sum(const std::vector<FunctorPtr>& terms, const std::string& name) {
  return std::make_shared<SumFunctor>(terms, name.empty() ? "(" + join_names(terms, " + ") + ")" : name);
}

FunctorPtr product(const std::vector<FunctorPtr>& factors, const std::string& name) {
  return std::make_shared<ProductFunctor>(factors,
                                          name.empty() ? "(" + join_names(factors, " * ") + ")" : name);
}

FunctorPtr compose(const FunctorPtr& g, const FunctorPtr& f) { return std::make_shared<ComposeFunctor>(g, f); }

std::string sum_tag(std::size_t i) { return "#" + std::to_string(i); }

Element sum_element(std::size_t i, const Element& e) {
  // cached labels: this sits on hot paths
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> v;
    for (std::size_t k = 0; k < 64; ++k) v.push_back("#" + std::to_string(k));
    return v;
  }();
  return Element::tag(i < labels.size() ? labels[i] : sum_tag(i), e);
}

std::size_t sum_index(const Element& e) {
  if (e.kind() != Kind::Tag || e.label().empty() || e.label()[0] != '#')
    throw std::invalid_argument("not a summand element: " + e.str());
  return std::stoul(e.label().substr(1));
}

// ---- NatTransf ----

NatTransf::NatTransf(FunctorPtr src, FunctorPtr dst, Component c, std::string name)
    : src_(std::move(src)), dst_(std::move(dst)), c_(std::move(c)), name_(std::move(name)) {}

FinFun NatTransf::component(const FinSet& x) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
  }
  FinSet s = src_->eval(x), d = dst_->eval(x);
  std::vector<Element> img;
  img.reserve(s.size());
  for (const auto& e : s) img.push_back(c_(x, e));
  FinFun f = FinFun::from_elements(s, d, img);
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(x, f).first->second;
}

TransfPtr make_transf(FunctorPtr src, FunctorPtr dst, NatTransf::Component c, std::string name) {
  return std::make_shared<NatTransf>(std::move(src), std::move(dst), std::move(c), std::move(name));
}

TransfPtr identity_transf(const FunctorPtr& f) {
  return make_transf(f, f, [](const FinSet&, const Element& e) { return e; }, "id_" + f->name());
}

TransfPtr vertical(const TransfPtr& u, const TransfPtr& t) {
  if (t->dst() != u->src()) throw std::invalid_argument("vertical: transformations not composable");
  return make_transf(
      t->src(), u->dst(), [u, t](const FinSet& x, const Element& e) { return u->at(x, t->at(x, e)); },
      u->name() + " . " + t->name());
}

TransfPtr horizontal(const TransfPtr& u, const TransfPtr& t) {
  FunctorPtr src = compose(u->src(), t->src()), dst = compose(u->dst(), t->dst());
  FunctorPtr g2 = u->dst(), f = t->src();
  return make_transf(
      src, dst,
      [u, t, g2, f](const FinSet& x, const Element& e) {
        Element mid = u->at(f->eval(x), e);
        return g2->apply(t->component(x), mid);
      },
      u->name() + " * " + t->name());
}

TransfPtr successor_injection(const FunctorPtr& f) {
  FunctorPtr fs = compose(f, successor());
  return make_transf(
      f, fs, [f](const FinSet& x, const Element& e) { return f->apply(succ_inclusion(x), e); },
      f->name() + " j");
}

}  // namespace fdiff
