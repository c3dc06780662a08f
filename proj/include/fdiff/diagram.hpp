#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdiff/finset.hpp"
#include "fdiff/functor.hpp"
#include "fdiff/perm_group.hpp"
#include "fdiff/report.hpp"
#include "fdiff/taut.hpp"

namespace fdiff {

// Finite category given by its full composition table.
class FinCat {
 public:
  struct Morphism {
    std::size_t src, dst;
    std::string name;
  };

  FinCat() = default;
  // comp[g][f] = index of g o f, or -1 when dst(f) != src(g); ids[a] = identity of object a.
  // Category laws are checked on the full table.
  FinCat(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
         std::vector<std::vector<int>> comp, std::vector<std::size_t> ids);

  // shapes
  static FinCat discrete(std::size_t n);
  static FinCat span();          // b <- a -> c
  static FinCat cospan();        // a -> c <- b
  static FinCat parallel_pair();  // f, g : a -> b
  static FinCat chain(std::size_t n);  // 0 < 1 < ... < n-1
  static FinCat square();        // commutative square, the pushout-completed poset 2 x 2
  static FinCat cyclic_group(std::size_t n);  // one object, Z/n
  static FinCat group(const PermGroup& g, const std::string& name);
  // poset on n points with leq[i][j]; must be reflexive, antisymmetric and transitive
  static FinCat poset(const std::string& name, const std::vector<std::vector<char>>& leq);
  // free category on a graph without composable edge pairs
  static FinCat free_on_graph(const std::string& name, std::size_t objects,
                              const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  static std::vector<FinCat> library();

  const std::string& name() const { return name_; }
  std::size_t objects() const { return objects_.size(); }
  const std::string& object_name(std::size_t a) const { return objects_[a]; }
  std::size_t morphisms() const { return morphisms_.size(); }
  const Morphism& morphism(std::size_t m) const { return morphisms_[m]; }
  std::size_t src(std::size_t m) const { return morphisms_[m].src; }
  std::size_t dst(std::size_t m) const { return morphisms_[m].dst; }
  std::size_t id(std::size_t a) const { return ids_[a]; }
  bool is_identity(std::size_t m) const { return ids_[morphisms_[m].src] == m; }
  std::size_t compose(std::size_t g, std::size_t f) const;  // g after f; throws if not composable
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const { return hom_[a * objects() + b]; }
  const std::vector<std::size_t>& out_of(std::size_t a) const { return out_[a]; }
  bool connected() const;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::vector<int>> comp_;
  std::vector<std::size_t> ids_;
  std::vector<std::vector<std::size_t>> hom_, out_;
};

// a failing span (alpha1, alpha2) out of a common object, if any
std::optional<std::pair<std::size_t, std::size_t>> confluence_failure(const FinCat& c);
bool is_confluent(const FinCat& c);

// Diagram of finite sets; maps indexed by morphism.
class Diagram {
 public:
  Diagram() = default;
  Diagram(FinCat shape, std::vector<FinSet> sets, std::vector<FinFun> maps);  // functoriality checked

  const FinCat& shape() const { return shape_; }
  const FinSet& at(std::size_t a) const { return sets_[a]; }
  const FinFun& map(std::size_t m) const { return maps_[m]; }
  // subsets closed under every map; throws otherwise
  Diagram sub(const std::vector<FinSet>& subsets) const;
  // smallest subdiagram containing the given (object, element) pairs
  Diagram closure(const std::vector<std::pair<std::size_t, Element>>& gens) const;

 private:
  FinCat shape_;
  std::vector<FinSet> sets_;
  std::vector<FinFun> maps_;
};

// colimit elements are Cls(Tuple(object, element)) of the least pair in the zigzag class
struct Colimit {
  FinSet apex;
  std::vector<FinFun> cocone;
};
Colimit colimit(const Diagram& d);
// classes of the one-step relation "equal after mapping to a common object", closed transitively
Colimit colimit_length1(const Diagram& d);
// universality against an independent quotient: any cocone factors uniquely through the colimit
Report colimit_universality(const Diagram& d);
// compatible families Tuple(x_0, ..., x_{n-1}), with projections
struct Limit {
  FinSet apex;
  std::vector<FinFun> projections;
};
Limit limit(const Diagram& d);

// natural map of diagrams over the same shape
struct DiagramMap {
  Diagram src, dst;
  std::vector<FinFun> components;
};
DiagramMap diagram_map(const Diagram& src, const Diagram& dst, std::vector<FinFun> components);  // naturality checked
FinFun colimit_map(const DiagramMap& t, const Colimit& cs, const Colimit& cd);
// t^{-1}(sub), sub a subdiagram of t.dst
Diagram inverse_image(const DiagramMap& t, const Diagram& sub);

Diagram representable(const FinCat& c, std::size_t a);  // C(a, -), elements are morphism indices
Diagram sum_of_representables(const FinCat& c, const std::vector<std::size_t>& objs);
// t((i, g)) = (b_i, g o mu_i) given Yoneda elements (b_i, mu_i : objs_dst[b_i] -> objs_src[i])
DiagramMap yoneda_map(const FinCat& c, const std::vector<std::size_t>& objs_src,
                      const std::vector<std::size_t>& objs_dst,
                      const std::vector<std::pair<std::size_t, std::size_t>>& yoneda);

// colim t^{-1}(G0) -> (colim t)^{-1}(colim G0): bijective?
Report commutation_trial(const DiagramMap& t, const Diagram& g0);
// length-1 zigzags agree with the full closure; subdiagram colimits embed with the expected image
Report confluent_colimit_properties(const Diagram& d, const Diagram& d0);
// random trials on the shape; on a non-confluent shape also the representable counterexample
Report check_colimit_commutes_with_inverse_images(const FinCat& c, int trials = 50,
                                                  std::uint64_t seed = kDefaultSeed);
// the representable counterexample built from a failing span: colim Phi0 against the inverse image
struct SpanCounterexample {
  std::size_t colim_phi0 = 0;       // |colim of the inverse-image subdiagram|
  std::size_t inverse_of_colim = 0;  // |(colim t)^{-1}(colim G0)|
  Report report;
};
SpanCounterexample span_counterexample(const FinCat& c, std::size_t alpha1, std::size_t alpha2);

// ---------------- connected components of a functor ----------------

struct Pi0 {
  FinSet index;  // F(1)
  std::vector<FunctorPtr> components;
  Report report;
};
Pi0 pi0(const FunctorPtr& f, int maxk = 6);

}  // namespace fdiff
