#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fdiff/finset.hpp"

namespace fdiff {

// certificate bound for functors taut by a closure property rather than by testing
inline constexpr int kByConstruction = 1 << 20;

class Functor;
using FunctorPtr = std::shared_ptr<const Functor>;

// Endofunctor of finite sets. Subclasses give the object part and the elementwise arrow map.
class Functor {
 public:
  explicit Functor(std::string name) : name_(std::move(name)) {}
  virtual ~Functor() = default;
  Functor(const Functor&) = delete;
  Functor& operator=(const Functor&) = delete;

  const std::string& name() const { return name_; }

  FinSet eval(const FinSet& x) const;
  FinFun map(const FinFun& f) const;
  virtual Element apply(const FinFun& f, const Element& e) const = 0;

  // tautness certificate: set by check_taut on success, or by closure constructors
  bool certified() const { return cert_bound_.load() >= 0; }
  int certified_bound() const { return cert_bound_.load(); }
  const std::string& certified_by() const { return cert_how_; }
  void certify(int bound, const std::string& how) const;

  void clear_caches() const;

 protected:
  virtual FinSet objects(const FinSet& x) const = 0;
  virtual FinFun arrows(const FinFun& f) const;  // default: apply on every element

 private:
  std::string name_;
  mutable std::mutex mu_;
  mutable std::unordered_map<FinSet, FinSet, FinSetHash> eval_cache_;
  mutable std::unordered_map<FinFun, FinFun, FinFunHash> map_cache_;
  mutable std::atomic<int> cert_bound_{-1};
  mutable std::string cert_how_;
};

using ObjectsFn = std::function<FinSet(const FinSet&)>;
using ApplyFn = std::function<Element(const FinFun&, const Element&)>;

FunctorPtr make_functor(std::string name, ObjectsFn objects, ApplyFn apply);

FunctorPtr identity();
FunctorPtr constant(const FinSet& c, const std::string& name = "");
FunctorPtr constant(std::size_t n);
FunctorPtr empty_functor();
FunctorPtr successor();
FunctorPtr sum(const std::vector<FunctorPtr>& terms, const std::string& name = "");
FunctorPtr product(const std::vector<FunctorPtr>& factors, const std::string& name = "");
FunctorPtr compose(const FunctorPtr& g, const FunctorPtr& f);  // g after f

// tag used by sum for summand i
std::string sum_tag(std::size_t i);
Element sum_element(std::size_t i, const Element& e);
std::size_t sum_index(const Element& e);

// ---- natural transformations ----

class NatTransf;
using TransfPtr = std::shared_ptr<const NatTransf>;

class NatTransf {
 public:
  using Component = std::function<Element(const FinSet&, const Element&)>;
  NatTransf(FunctorPtr src, FunctorPtr dst, Component c, std::string name);

  const FunctorPtr& src() const { return src_; }
  const FunctorPtr& dst() const { return dst_; }
  const std::string& name() const { return name_; }
  Element at(const FinSet& x, const Element& e) const { return c_(x, e); }
  FinFun component(const FinSet& x) const;

  bool certified() const { return cert_.load(); }
  void certify() const { cert_.store(true); }

 private:
  FunctorPtr src_, dst_;
  Component c_;
  std::string name_;
  mutable std::mutex mu_;
  mutable std::unordered_map<FinSet, FinFun, FinSetHash> cache_;
  mutable std::atomic<bool> cert_{false};
};

TransfPtr make_transf(FunctorPtr src, FunctorPtr dst, NatTransf::Component c, std::string name);
TransfPtr identity_transf(const FunctorPtr& f);
TransfPtr vertical(const TransfPtr& u, const TransfPtr& t);  // u after t
// u * t : G o F -> G' o F', componentwise G'(t_X) after u_{F X}
TransfPtr horizontal(const TransfPtr& u, const TransfPtr& t);
// F j : F -> F o S
TransfPtr successor_injection(const FunctorPtr& f);

}  // namespace fdiff
