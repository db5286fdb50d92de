#include "orbitforge/orbit_search.hpp"

#include "orbitforge/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <span>

namespace orbitforge {

void SearchBudget::tick() {
  if (++used_ > cap_) {
    throw CapExceeded("itinerary search exceeded branch cap " + std::to_string(cap_));
  }
}

namespace {

using Iterates = std::vector<Affine>;

// Depth-first walk over piece itineraries of length `steps`.
// step(depth, domain, iterates) may shrink the domain of starting points after
// iterates[depth] is known; leaf(domain, iterates) returns true to stop.
template <class Step, class Leaf>
class ItineraryWalk {
 public:
  ItineraryWalk(const PLMap& f, int steps, Step step, Leaf leaf, SearchBudget& budget)
      : f_(f), steps_(steps), step_(std::move(step)), leaf_(std::move(leaf)), budget_(budget) {}

  void run(const Interval& start) {
    iterates_.assign(1, Affine{});
    iterates_.reserve(steps_ + 1);
    stop_ = false;
    descend(start, 0);
  }

 private:
  void descend(const Interval& dom, int depth) {
    budget_.tick();
    if (depth == steps_) {
      if (leaf_(dom, std::span<const Affine>(iterates_))) stop_ = true;
      return;
    }
    const auto& pieces = f_.pieces();
    const Interval img = iterates_[depth].image(dom);
    auto it = std::lower_bound(pieces.begin(), pieces.end(), img.lo,
                               [](const Piece& p, const Rational& v) { return p.hi < v; });
    for (; it != pieces.end() && it->lo <= img.hi; ++it) {
      const Interval hit = img.intersect(it->domain());
      if (hit.empty()) continue;
      // a lone shared breakpoint is already handled by the piece to its left
      if (it != pieces.begin() && hit.degenerate() && hit.lo == it->lo) continue;
      Interval sub = iterates_[depth].preimage(it->domain(), dom);
      if (sub.empty()) continue;
      iterates_.resize(depth + 2);
      iterates_[depth + 1] = it->map.after(iterates_[depth]);
      sub = step_(depth + 1, sub, std::span<const Affine>(iterates_));
      if (sub.empty()) continue;
      descend(sub, depth + 1);
      if (stop_) return;
    }
  }

  const PLMap& f_;
  int steps_;
  Step step_;
  Leaf leaf_;
  SearchBudget& budget_;
  Iterates iterates_;
  bool stop_ = false;
};

template <class Step, class Leaf>
void walk(const PLMap& f, const Interval& start, int steps, Step step, Leaf leaf,
          SearchBudget& budget) {
  ItineraryWalk<Step, Leaf> w(f, steps, std::move(step), std::move(leaf), budget);
  w.run(start);
}

struct NoConstraint {
  Interval operator()(int, const Interval& dom, std::span<const Affine>) const { return dom; }
};

// Restrict dom to {x : (a - b)(x) > 0}.
Interval restrict_greater(const Interval& dom, const Affine& a, const Affine& b) {
  const Rational c = a.slope - b.slope;
  const Rational d = a.offset - b.offset;
  if (c == 0) {
    if (d > 0) return dom;
    return Interval{dom.hi, dom.lo, true, true};
  }
  const Rational root = -d / c;
  return c > 0 ? dom.above(root, true) : dom.below(root, true);
}

// Solution set of phi(x) = x on dom: nothing, one point, or all of dom.
enum class LeafKind { None, Point, Identity };

LeafKind solve_return(const Affine& phi, const Interval& dom, Rational& x) {
  if (phi.slope == 1) return phi.offset == 0 ? LeafKind::Identity : LeafKind::None;
  x = phi.offset / (1 - phi.slope);
  return dom.contains(x) ? LeafKind::Point : LeafKind::None;
}

// x has least period n when no earlier iterate returns to it.
bool least_period_is(std::span<const Affine> its, int n, const Rational& x) {
  for (int i = 1; i < n; ++i) {
    if (its[i](x) == x) return false;
  }
  return true;
}

// Points of dom with f^i(x) = x for some 0 < i < n; nullopt when some such
// iterate is the identity on all of dom.
std::optional<std::vector<Rational>> lower_period_points(std::span<const Affine> its, int n,
                                                         const Interval& dom) {
  std::vector<Rational> bad;
  for (int i = 1; i < n; ++i) {
    Rational x;
    switch (solve_return(its[i], dom, x)) {
      case LeafKind::Identity:
        return std::nullopt;
      case LeafKind::Point:
        bad.push_back(x);
        break;
      case LeafKind::None:
        break;
    }
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  return bad;
}

// Pieces of dom left after removing finitely many sorted points.
std::vector<Interval> split_at(const Interval& dom, const std::vector<Rational>& cuts) {
  std::vector<Interval> out;
  Interval cur = dom;
  for (const auto& c : cuts) {
    if (!cur.contains(c)) continue;
    Interval left{cur.lo, c, cur.lo_open, true};
    if (!left.empty()) out.push_back(left);
    cur = Interval{c, cur.hi, true, cur.hi_open};
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

FiniteOrbit orbit_from_iterates(std::span<const Affine> its, int n, const Rational& x) {
  FiniteOrbit o;
  o.points.reserve(n);
  for (int i = 0; i < n; ++i) o.points.push_back(its[i](x));
  return o;
}

}  // namespace

std::optional<FiniteOrbit> find_periodic_orbit(const PLMap& f, int n, const SearchLimits& limits) {
  if (n < 1) throw InvalidInput("period must be at least 1");
  SearchBudget budget(limits.branch_cap);
  std::optional<FiniteOrbit> found;
  auto leaf = [&](const Interval& dom, std::span<const Affine> its) {
    Rational x;
    switch (solve_return(its[n], dom, x)) {
      case LeafKind::None:
        return false;
      case LeafKind::Point:
        if (!least_period_is(its, n, x)) return false;
        break;
      case LeafKind::Identity: {
        auto bad = lower_period_points(its, n, dom);
        if (!bad) return false;
        auto parts = split_at(dom, *bad);
        if (parts.empty()) return false;
        x = parts.front().degenerate() ? parts.front().lo : parts.front().midpoint();
        break;
      }
    }
    found = rotate_to_leftmost(orbit_from_iterates(its, n, x));
    return true;
  };
  walk(f, f.domain(), n, NoConstraint{}, leaf, budget);
  return found;
}

std::optional<FiniteOrbit> find_orbit_with_pattern(const PLMap& f, const Pattern& p,
                                                   const SearchLimits& limits) {
  const int n = p.period();
  const std::vector<int> ranks = p.ranks_in_time_order(0);
  SearchBudget budget(limits.branch_cap);
  std::optional<FiniteOrbit> found;

  // Keep only starting points whose j-th iterate sits strictly between the
  // already placed points of neighbouring rank.
  auto step = [&](int depth, const Interval& dom, std::span<const Affine> its) {
    if (depth >= n) return dom;
    int below = -1;
    int above = -1;
    for (int j = 0; j < depth; ++j) {
      if (ranks[j] < ranks[depth] && (below < 0 || ranks[j] > ranks[below])) below = j;
      if (ranks[j] > ranks[depth] && (above < 0 || ranks[j] < ranks[above])) above = j;
    }
    Interval out = dom;
    if (below >= 0) out = restrict_greater(out, its[depth], its[below]);
    if (above >= 0 && !out.empty()) out = restrict_greater(out, its[above], its[depth]);
    return out;
  };
  auto leaf = [&](const Interval& dom, std::span<const Affine> its) {
    Rational x;
    switch (solve_return(its[n], dom, x)) {
      case LeafKind::None:
        return false;
      case LeafKind::Point:
        break;
      case LeafKind::Identity:
        x = dom.pick();
        break;
    }
    FiniteOrbit o = orbit_from_iterates(its, n, x);
    if (from_orbit(o.points) != p) return false;
    found = std::move(o);
    return true;
  };
  walk(f, f.domain(), n, step, leaf, budget);
  return found;
}

std::vector<Rational> itinerary_solutions(const PLMap& f, const std::vector<Interval>& chain,
                                          const SearchLimits& limits) {
  if (chain.empty()) throw InvalidInput("empty interval chain");
  const int steps = static_cast<int>(chain.size());
  SearchBudget budget(limits.branch_cap);
  std::vector<Rational> out;
  auto step = [&](int depth, const Interval& dom, std::span<const Affine> its) {
    if (depth >= steps) return dom;
    return its[depth].preimage(chain[depth], dom);
  };
  auto leaf = [&](const Interval& dom, std::span<const Affine> its) {
    Rational x;
    switch (solve_return(its[steps], dom, x)) {
      case LeafKind::None:
        return false;
      case LeafKind::Point:
        out.push_back(x);
        break;
      case LeafKind::Identity:
        out.push_back(dom.pick());
        break;
    }
    return false;
  };
  walk(f, chain.front().intersect(f.domain()), steps, step, leaf, budget);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PeriodicOrbit> periodic_orbits(const PLMap& f, int n, const SearchLimits& limits) {
  if (n < 1) throw InvalidInput("period must be at least 1");
  SearchBudget budget(limits.branch_cap);
  std::set<std::vector<Rational>> isolated;
  std::map<Pattern, std::vector<Interval>> family_parts;
  std::vector<Interval> fixed_families;  // n == 1 has no pattern

  auto leaf = [&](const Interval& dom, std::span<const Affine> its) {
    Rational x;
    switch (solve_return(its[n], dom, x)) {
      case LeafKind::None:
        break;
      case LeafKind::Point:
        if (least_period_is(its, n, x)) {
          isolated.insert(rotate_to_leftmost(orbit_from_iterates(its, n, x)).points);
        }
        break;
      case LeafKind::Identity: {
        if (dom.degenerate()) {
          if (least_period_is(its, n, dom.lo)) {
            isolated.insert(rotate_to_leftmost(orbit_from_iterates(its, n, dom.lo)).points);
          }
          break;
        }
        if (n == 1) {
          fixed_families.push_back(dom);
          break;
        }
        auto bad = lower_period_points(its, n, dom);
        if (!bad) break;
        // Between lower-period points the spatial order of the orbit is fixed,
        // so one leftmost index and one pattern describe each part.
        for (const Interval& part : split_at(dom, *bad)) {
          const Rational probe = part.degenerate() ? part.lo : part.midpoint();
          FiniteOrbit o = orbit_from_iterates(its, n, probe);
          const auto lm = std::min_element(o.points.begin(), o.points.end()) - o.points.begin();
          family_parts[from_orbit(o.points)].push_back(its[lm].image(part));
        }
        break;
      }
    }
    return false;
  };
  walk(f, f.domain(), n, NoConstraint{}, leaf, budget);

  std::vector<PeriodicOrbit> out;
  std::vector<std::pair<Interval, Pattern>> families;
  std::vector<Interval> fixed_family_spans;
  auto merge_into_families = [&](std::vector<Interval> parts, const std::optional<Pattern>& pat) {
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return !a.lo_open && b.lo_open;
    });
    std::vector<Interval> merged;
    for (const auto& iv : parts) {
      if (!merged.empty() && !merged.back().intersect(iv).empty()) {
        Interval& m = merged.back();
        if (iv.hi > m.hi || (iv.hi == m.hi && !iv.hi_open)) {
          m.hi = iv.hi;
          m.hi_open = iv.hi_open;
        }
      } else {
        merged.push_back(iv);
      }
    }
    for (const auto& iv : merged) {
      const Rational start = iv.degenerate() ? iv.lo : iv.midpoint();
      FiniteOrbit rep = orbit_of(f, start, n);
      if (iv.degenerate()) {
        isolated.insert(rep.points);
        continue;
      }
      if (pat) {
        families.emplace_back(iv, *pat);
      } else {
        fixed_family_spans.push_back(iv);
      }
      out.emplace_back(OrbitFamily{iv, std::move(rep)});
    }
  };
  merge_into_families(fixed_families, std::nullopt);
  for (auto& [pat, parts] : family_parts) merge_into_families(parts, pat);

  for (const auto& pts : isolated) {
    bool covered = false;
    for (const auto& [iv, pat] : families) {
      if (iv.contains(pts.front()) && n >= 2 && from_orbit(pts) == pat) covered = true;
    }
    if (n == 1) {
      for (const auto& iv : fixed_family_spans) {
        if (iv.contains(pts.front())) covered = true;
      }
    }
    if (!covered) out.emplace_back(FiniteOrbit{pts});
  }
  std::sort(out.begin(), out.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
    return representative(a).points < representative(b).points;
  });
  return out;
}

}  // namespace orbitforge
