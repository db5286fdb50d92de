#pragma once

#include "orbitforge/pattern.hpp"
#include "orbitforge/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace orbitforge {

struct SearchLimits {
  std::size_t piece_cap = 1'000'000;      // pieces of a materialized iterate
  std::uint64_t branch_cap = 20'000'000;  // itinerary-search nodes per query
  std::uint64_t loop_state_cap = 10'000'000;
  int max_enumerate_period = 10;
};

struct Node {
  Rational x;
  Rational y;
};

struct Piece {
  Rational lo;
  Rational hi;
  Affine map;

  Interval domain() const { return Interval::closed(lo, hi); }
};

// Continuous piecewise-linear self-map of [x_0, x_M] interpolating its nodes.
class PLMap {
 public:
  // Throws InvalidInput on fewer than two nodes, non-increasing x, or a node
  // value outside the domain.
  explicit PLMap(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Rational& lo() const { return nodes_.front().x; }
  const Rational& hi() const { return nodes_.back().x; }
  Interval domain() const { return Interval::closed(lo(), hi()); }

  // Index of a piece containing x (the left one at a shared breakpoint).
  std::size_t piece_at(const Rational& x) const;

  // Throws OutOfDomain.
  Rational operator()(const Rational& x) const;

  // Exact image of a closed subinterval of the domain.
  Interval image(const Interval& iv) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Piece> pieces_;
};

// "0:0,1/2:1,1:0"
PLMap parse_map(std::string_view text);
std::string to_string(const PLMap& f);

// Node (i, sigma[i]) at every integer of [0, n-1].
PLMap connect_the_dots(const Pattern& p);

Rational eval(const PLMap& f, const Rational& x);

// outer after inner, with collinear nodes merged. Throws CapExceeded.
PLMap compose(const PLMap& outer, const PLMap& inner, std::size_t piece_cap);

// k-fold composition (k = 1 returns f unchanged). Throws CapExceeded.
PLMap iterate(const PLMap& f, int k, std::size_t piece_cap = SearchLimits{}.piece_cap);

// Conjugate by the reflection x -> lo + hi - x of the domain.
PLMap mirror_conjugate(const PLMap& f);
Rational reflect(const PLMap& f, const Rational& x);

// Maximal closed intervals (possibly single points), sorted and disjoint.
using PointSet = std::vector<Interval>;

// Solutions of f(x) = x.
PointSet fixed_sets(const PLMap& f);

// Solutions of f(x) = y.
PointSet preimages(const PLMap& f, const Rational& y);

struct FiniteOrbit {
  std::vector<Rational> points;  // time order

  int period() const { return static_cast<int>(points.size()); }
  bool operator==(const FiniteOrbit&) const = default;
};

// A continuum of orbits of one type: those whose leftmost point lies in
// `leftmost`. The representative starts at the midpoint of that interval.
struct OrbitFamily {
  Interval leftmost;
  FiniteOrbit representative;
};

using PeriodicOrbit = std::variant<FiniteOrbit, OrbitFamily>;

// Rotate so the leftmost point comes first.
FiniteOrbit rotate_to_leftmost(const FiniteOrbit& orbit);

// The orbit of x of length n (x, f(x), ..., f^{n-1}(x)).
FiniteOrbit orbit_of(const PLMap& f, const Rational& x, int n);

// True when the points form a cycle of f of exactly that length.
bool is_orbit(const PLMap& f, const FiniteOrbit& orbit);

// Every orbit of least period exactly n, leftmost point first, sorted.
// Throws CapExceeded.
std::vector<PeriodicOrbit> periodic_orbits(const PLMap& f, int n, const SearchLimits& limits = {});

const FiniteOrbit& representative(const PeriodicOrbit& o);

}  // namespace orbitforge
