#pragma once

// Constructions that turn an orbit of one type into an orbit (or backward
// orbit) of another, with every intermediate object exact.

#include "orbitforge/pattern.hpp"
#include "orbitforge/plmap.hpp"
#include "orbitforge/properties.hpp"

#include <array>
#include <optional>
#include <vector>

namespace orbitforge {

// Closed intervals J_0..J_N with f(J_i) ⊇ J_{i+1} and f(J_N) ⊇ J_0.
using IntervalChain = std::vector<Interval>;

struct ConstructionTrace {
  enum class Kind { ExtendTwoParam, Stefan3ToTwoParam };
  Kind kind;
  int power = 1;           // the chain and result live on f^power
  FiniteOrbit source;      // input orbit, x_0 first
  Rational z;              // fixed point of f^power the construction pivots on
  Rational w;              // f(w) = x_0
  std::optional<std::array<Rational, 3>> aux_fixed;  // a, b, c
  IntervalChain chain;
  FiniteOrbit result;      // starts in chain[0]
  TypeTag expected;
};

std::string to_string(ConstructionTrace::Kind k);

// Leftmost fixed point in the closed interval j. Throws CoverageViolation
// when there is none.
Rational fixed_in_interval(const PLMap& f, const Interval& j);

// True when the chain covers itself cyclically under f.
bool covers_cyclically(const PLMap& f, const IntervalChain& chain);

// Leftmost y in chain[0] with f^i(y) in chain[i] and f^{N+1}(y) = y.
// Throws CoverageViolation if the covering relations fail.
Rational solve_itinerary(const PLMap& f, const IntervalChain& chain, const SearchLimits& limits = {});

// From an orbit of type TwoParam(m, n) with m, n >= 2, an orbit one longer:
// TwoParam(m, n+1) for Side::Right, TwoParam(m+1, n) for Side::Left, where
// (m, n) is the normalized tag.
ConstructionTrace extend_two_param(const PLMap& f, const FiniteOrbit& orbit, Side side,
                                   const SearchLimits& limits = {});

// From a period-3 orbit, a period-4 orbit of f^2 of type TwoParam(2,2).
ConstructionTrace stefan3_to_L22(const PLMap& f, const FiniteOrbit& orbit, const SearchLimits& limits = {});

// A Stefan(2n+1) orbit read as an orbit of f^2: x_0, x_2, ..., x_1, x_3, ...
FiniteOrbit stefan_to_two_param(const PLMap& f, const FiniteOrbit& orbit);

// Backward orbit of the fixed point between x_n and x_0 of a TwoParam(m,n)
// orbit (2 <= m <= n), with the first m points left of z and the rest
// decreasing towards z from the right. Holds max(depth, m+1) points.
BackwardChainWitness backward_prefix(const PLMap& f, const FiniteOrbit& orbit, int depth);

// Re-checks covering, itinerary, least period and type of a trace.
bool verify_trace(const PLMap& f, const ConstructionTrace& t);

}  // namespace orbitforge
