#pragma once

// Periodic-point search by depth-first enumeration of piece itineraries.
// f^n is never materialized: each branch carries the affine form of every
// iterate on the set of starting points that follow that itinerary.

#include "orbitforge/pattern.hpp"
#include "orbitforge/plmap.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace orbitforge {

class SearchBudget {
 public:
  explicit SearchBudget(std::uint64_t cap) : cap_(cap) {}
  // Throws CapExceeded once the cap is passed.
  void tick();
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t cap_;
  std::uint64_t used_ = 0;
};

// Some orbit of least period exactly n, leftmost point first.
std::optional<FiniteOrbit> find_periodic_orbit(const PLMap& f, int n,
                                               const SearchLimits& limits = {});

// Some orbit whose pattern is exactly p (mirror not included), leftmost
// point first.
std::optional<FiniteOrbit> find_orbit_with_pattern(const PLMap& f, const Pattern& p,
                                                   const SearchLimits& limits = {});

// Every y in chain[0] with f^i(y) in chain[i] and f^{N+1}(y) = y, where
// N + 1 = chain.size(). Identity branches contribute their left end. Sorted.
std::vector<Rational> itinerary_solutions(const PLMap& f, const std::vector<Interval>& chain,
                                          const SearchLimits& limits = {});

}  // namespace orbitforge
