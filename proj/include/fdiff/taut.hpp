#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "fdiff/functor.hpp"
#include "fdiff/report.hpp"

namespace fdiff {

struct TautOptions {
  int K = 3;                 // largest test set
  int exhaustive = 3;        // exhaustive up to this size, seeded sampling above
  std::uint64_t seed = kDefaultSeed;
  int samples = 48;          // random squares per size above the exhaustive range
};

using Family = std::function<Element(const FinSet&, const Element&)>;

// F(id) = id and F(g f) = F(g) F(f) on all functions between sets of size <= 2, sampled at 3
Report check_functorial(const FunctorPtr& f, const TautOptions& opt = {});

// inverse-image squares (subset X0 of X, any f : Y -> X) must go to pullbacks
Report check_taut(const FunctorPtr& f, const TautOptions& opt = {});

// naturality squares commute for every f between test sets
Report check_natural(const TransfPtr& t, const TautOptions& opt = {});

// naturality squares at subset inclusions are pullbacks
Report check_taut_transf(const TransfPtr& t, const TautOptions& opt = {});

// with a family: bijective and natural; without: only cardinalities ("cardinality-consistent")
Report iso_witness(const FunctorPtr& f, const FunctorPtr& g, const TautOptions& opt = {},
                   const std::optional<Family>& family = std::nullopt);

// Given an iso F + G -> F + H that commutes with the F injections, the induced G -> H
struct Cancellation {
  Family restricted;
  Report report;
};
Cancellation cancel(const FunctorPtr& f, const FunctorPtr& g, const FunctorPtr& h, const Family& iso,
                    const TautOptions& opt = {});

// test sets used everywhere: {0..n-1}
FinSet test_set(std::size_t n);

}  // namespace fdiff
