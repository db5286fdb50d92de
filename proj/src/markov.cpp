#include "orbitforge/markov.hpp"

#include "orbitforge/errors.hpp"
#include "orbitforge/orbit_search.hpp"

#include <algorithm>
#include <sstream>

namespace orbitforge {

bool MarkovGraph::has_edge(int r, int s) const {
  const auto& succ = successors[r];
  return std::binary_search(succ.begin(), succ.end(), s);
}

std::vector<std::pair<int, int>> MarkovGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < vertices; ++r) {
    for (int s : successors[r]) out.emplace_back(r, s);
  }
  return out;
}

MarkovGraph covering_graph(const Pattern& p) {
  MarkovGraph g;
  g.vertices = p.period() - 1;
  g.successors.resize(g.vertices);
  for (int r = 0; r < g.vertices; ++r) {
    const int lo = std::min(p[r], p[r + 1]);
    const int hi = std::max(p[r], p[r + 1]);
    for (int s = lo; s < hi; ++s) g.successors[r].push_back(s);
  }
  return g;
}

namespace {

// Smallest d with word[i] == word[i + d mod n] for all i.
int cyclic_period(const std::vector<int>& word) {
  const int n = static_cast<int>(word.size());
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (int i = 0; i + d < n && ok; ++i) ok = word[i] == word[i + d];
    if (ok) return d;
  }
  return n;
}

class LoopSearch {
 public:
  LoopSearch(const MarkovGraph& g, std::uint64_t cap) : g_(g), cap_(cap) {}

  // Is there a primitive closed walk of length n through `start`?
  bool primitive_loop(int start, int n) {
    n_ = n;
    start_ = start;
    word_.assign(1, start);
    return extend();
  }

 private:
  bool extend() {
    if (++states_ > cap_) {
      throw CapExceeded("loop search exceeded state cap " + std::to_string(cap_));
    }
    const int here = word_.back();
    if (static_cast<int>(word_.size()) == n_) {
      return g_.has_edge(here, start_) && cyclic_period(word_) == n_;
    }
    for (int next : g_.successors[here]) {
      // rotations are covered by other start vertices: keep start minimal
      if (next < start_) continue;
      word_.push_back(next);
      if (extend()) return true;
      word_.pop_back();
    }
    return false;
  }

  const MarkovGraph& g_;
  std::uint64_t cap_;
  std::uint64_t states_ = 0;
  int n_ = 0;
  int start_ = 0;
  std::vector<int> word_;
};

}  // namespace

std::set<int> loop_periods(const MarkovGraph& g, int max_n, const SearchLimits& limits) {
  if (max_n < 1) throw InvalidInput("max_n must be at least 1");
  std::set<int> out;
  LoopSearch search(g, limits.loop_state_cap);
  for (int n = 1; n <= max_n; ++n) {
    for (int v = 0; v < g.vertices; ++v) {
      if (search.primitive_loop(v, n)) {
        out.insert(n);
        break;
      }
    }
  }
  return out;
}

std::set<int> map_periods(const PLMap& f, int max_n, const SearchLimits& limits) {
  std::set<int> out;
  for (int n = 1; n <= max_n; ++n) {
    if (find_periodic_orbit(f, n, limits)) out.insert(n);
  }
  return out;
}

std::set<int> forced_periods(const Pattern& p, int max_n, const SearchLimits& limits) {
  if (max_n < 1) throw InvalidInput("max_n must be at least 1");
  return map_periods(connect_the_dots(p), max_n, limits);
}

std::string to_dot(const MarkovGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int r = 0; r < g.vertices; ++r) os << "  I" << r << ";\n";
  for (const auto& [r, s] : g.edges()) os << "  I" << r << " -> I" << s << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace orbitforge
