#pragma once

#include "orbitforge/pattern.hpp"
#include "orbitforge/plmap.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace orbitforge {

// Covering relation on the basic intervals I_r = [r, r+1] of a pattern:
// r -> s iff the span of sigma[r], sigma[r+1] contains I_s.
struct MarkovGraph {
  int vertices = 0;
  std::vector<std::vector<int>> successors;  // sorted

  bool has_edge(int r, int s) const;
  std::vector<std::pair<int, int>> edges() const;
};

MarkovGraph covering_graph(const Pattern& p);

// Lengths n <= max_n admitting a closed walk that is not a power of a
// shorter one. Throws CapExceeded after limits.loop_state_cap DFS states.
std::set<int> loop_periods(const MarkovGraph& g, int max_n, const SearchLimits& limits = {});

// Periods n <= max_n of the connect-the-dots map of p, decided by the exact
// solver. Throws CapExceeded.
std::set<int> forced_periods(const Pattern& p, int max_n, const SearchLimits& limits = {});

// Same question for an arbitrary map.
std::set<int> map_periods(const PLMap& f, int max_n, const SearchLimits& limits = {});

// Graphviz rendering: nodes "I<r>", one edge per covering relation.
std::string to_dot(const MarkovGraph& g, const std::string& name = "markov");

}  // namespace orbitforge
