#include "orbitforge/witness.hpp"

#include "orbitforge/errors.hpp"
#include "orbitforge/orbit_search.hpp"

#include <algorithm>

namespace orbitforge {

namespace {

Interval closed(const Rational& a, const Rational& b) {
  return a <= b ? Interval{a, b, false, false} : Interval{b, a, false, false};
}

// The orbit and map in the orientation where the orbit's pattern is exactly
// the template, with x_0 (at `anchor` rank) first.
struct Oriented {
  const PLMap& original;
  PLMap map;
  bool mirrored = false;
  std::vector<Rational> x;

  Rational back(const Rational& v) const { return mirrored ? reflect(original, v) : v; }
  Interval back(const Interval& iv) const { return mirrored ? closed(back(iv.lo), back(iv.hi)) : iv; }
  FiniteOrbit back(const std::vector<Rational>& pts) const {
    FiniteOrbit out;
    for (const auto& p : pts) out.points.push_back(back(p));
    return out;
  }
};

Oriented orient(const PLMap& f, const FiniteOrbit& orbit, const Pattern& tmpl, int anchor) {
  if (orbit.period() < 2 || !is_orbit(f, orbit)) throw TypeMismatch("points do not form an orbit of the map");
  const Pattern p = from_orbit(orbit.points);
  Oriented o{f, f, false, orbit.points};
  if (p != tmpl) {
    if (p != mirror(tmpl)) throw TypeMismatch("orbit pattern " + to_string(p) + " does not match the template");
    o.map = mirror_conjugate(f);
    o.mirrored = true;
    for (auto& v : o.x) v = reflect(f, v);
  }
  std::vector<Rational> sorted = o.x;
  std::sort(sorted.begin(), sorted.end());
  std::rotate(o.x.begin(), std::find(o.x.begin(), o.x.end(), sorted[anchor]), o.x.end());
  return o;
}

std::optional<TypeTag> two_param_tag(const FiniteOrbit& orbit) {
  if (orbit.period() < 2) return std::nullopt;
  for (const auto& t : classify(from_orbit(orbit.points))) {
    if (t.kind == TypeTag::Kind::TwoParam) return t;
  }
  return std::nullopt;
}

// Parts of a closed point set inside the open interval (lo, hi).
std::vector<Interval> inside(const PointSet& set, const Rational& lo, const Rational& hi) {
  std::vector<Interval> out;
  for (const auto& comp : set) {
    Interval part = comp.intersect(Interval{lo, hi, true, true});
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

Rational largest_in(const PointSet& set, const Rational& lo, const Rational& hi) {
  auto parts = inside(set, lo, hi);
  if (parts.empty()) throw CoverageViolation("no point in (" + to_string(lo) + ", " + to_string(hi) + ")");
  const Interval& top = parts.back();
  return top.hi_open ? top.midpoint() : top.hi;
}

Rational smallest_in(const PointSet& set, const Rational& lo, const Rational& hi) {
  auto parts = inside(set, lo, hi);
  if (parts.empty()) throw CoverageViolation("no point in (" + to_string(lo) + ", " + to_string(hi) + ")");
  return parts.front().pick();
}

// Fixed point in [lo, hi] nearest hi.
Rational fixed_nearest_right(const PLMap& h, const Rational& lo, const Rational& hi) {
  return largest_in(fixed_sets(h), lo, hi);
}

// Leftmost solution whose orbit has least period chain.size().
FiniteOrbit leftmost_cycle(const PLMap& h, const IntervalChain& chain, const SearchLimits& limits) {
  if (!covers_cyclically(h, chain)) throw CoverageViolation("interval chain does not cover itself");
  const int n = static_cast<int>(chain.size());
  for (const auto& y : itinerary_solutions(h, chain, limits)) {
    FiniteOrbit o = orbit_of(h, y, n);
    if (is_orbit(h, o)) return o;
  }
  throw std::logic_error("covering chain without a cycle of full period");
}

}  // namespace

std::string to_string(ConstructionTrace::Kind k) {
  return k == ConstructionTrace::Kind::ExtendTwoParam ? "extend_two_param" : "stefan3_to_L22";
}

Rational fixed_in_interval(const PLMap& f, const Interval& j) {
  for (const auto& comp : fixed_sets(f)) {
    Interval part = comp.intersect(j);
    if (!part.empty()) return part.pick();
  }
  throw CoverageViolation("no fixed point in " + to_string(j));
}

bool covers_cyclically(const PLMap& f, const IntervalChain& chain) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Interval& next = chain[(i + 1) % chain.size()];
    if (!f.domain().covers(chain[i]) || !f.image(chain[i]).covers(next)) return false;
  }
  return !chain.empty();
}

Rational solve_itinerary(const PLMap& f, const IntervalChain& chain, const SearchLimits& limits) {
  if (!covers_cyclically(f, chain)) throw CoverageViolation("interval chain does not cover itself");
  auto sols = itinerary_solutions(f, chain, limits);
  if (sols.empty()) throw std::logic_error("covering chain without a periodic point");
  return sols.front();
}

ConstructionTrace extend_two_param(const PLMap& f, const FiniteOrbit& orbit, Side side,
                                   const SearchLimits& limits) {
  const auto tag = two_param_tag(orbit);
  if (!tag || tag->a < 2) throw TypeMismatch("extension needs a TwoParam(m,n) orbit with m, n >= 2");
  const int m = side == Side::Right ? tag->a : tag->b;
  const int n = side == Side::Right ? tag->b : tag->a;
  const Oriented o = orient(f, orbit, two_param_template(m, n), m);
  const PLMap& h = o.map;
  const auto& x = o.x;

  const Rational z = fixed_nearest_right(h, x[n], x[0]);
  const Rational w = largest_in(preimages(h, x[0]), z, x[0]);
  IntervalChain chain{closed(z, w), closed(w, x[0])};
  for (int i = 2; i <= n; ++i) chain.push_back(closed(x[i - 2], x[i - 1]));
  chain.push_back(closed(x[n], z));
  for (int i = n + 2; i <= m + n; ++i) chain.push_back(closed(x[i - 1], x[i - 2]));
  const FiniteOrbit result = leftmost_cycle(h, chain, limits);

  ConstructionTrace t{ConstructionTrace::Kind::ExtendTwoParam, 1, o.back(x), o.back(z), o.back(w),
                      std::nullopt, {}, o.back(result.points), TypeTag::two_param(m, n + 1)};
  for (const auto& j : chain) t.chain.push_back(o.back(j));
  return t;
}

ConstructionTrace stefan3_to_L22(const PLMap& f, const FiniteOrbit& orbit, const SearchLimits& limits) {
  if (orbit.period() != 3) throw TypeMismatch("needs a period-3 orbit");
  const Oriented o = orient(f, orbit, stefan_template(3), 1);
  const auto& x = o.x;  // x_2 < x_0 < x_1
  const Rational w = largest_in(preimages(o.map, x[0]), x[0], x[1]);
  const PLMap g = iterate(o.map, 2);
  const PointSet fixed = fixed_sets(g);
  const Rational a = largest_in(fixed, x[2], x[0]);
  const Rational b = smallest_in(fixed, x[0], w);
  const Rational c = smallest_in(fixed, w, x[1]);
  const IntervalChain chain{closed(x[0], b), closed(x[2], a), closed(w, c), closed(c, x[1])};
  const FiniteOrbit result = leftmost_cycle(g, chain, limits);

  ConstructionTrace t{ConstructionTrace::Kind::Stefan3ToTwoParam,
                      2,
                      o.back(x),
                      o.back(b),
                      o.back(w),
                      std::array<Rational, 3>{o.back(a), o.back(b), o.back(c)},
                      {},
                      o.back(result.points),
                      TypeTag::two_param(2, 2)};
  for (const auto& j : chain) t.chain.push_back(o.back(j));
  return t;
}

FiniteOrbit stefan_to_two_param(const PLMap& f, const FiniteOrbit& orbit) {
  const int q = orbit.period();
  if (q < 3 || q % 2 == 0) throw TypeMismatch("needs an orbit of odd period >= 3");
  const Oriented o = orient(f, orbit, stefan_template(q), (q - 1) / 2);
  const FiniteOrbit x = o.back(o.x);
  FiniteOrbit out;
  for (int i = 0; i < q; i += 2) out.points.push_back(x.points[i]);
  for (int i = 1; i < q; i += 2) out.points.push_back(x.points[i]);
  return out;
}

BackwardChainWitness backward_prefix(const PLMap& f, const FiniteOrbit& orbit, int depth) {
  const auto tag = two_param_tag(orbit);
  if (!tag || tag->a < 2) throw TypeMismatch("needs a TwoParam(m,n) orbit with m, n >= 2");
  const int m = tag->a;
  const int n = tag->b;
  const Oriented o = orient(f, orbit, two_param_template(m, n), m);
  const PLMap& h = o.map;
  const auto& x = o.x;

  const Rational z = fixed_nearest_right(h, x[n], x[0]);
  const int count = std::max(depth, m + 1);
  std::vector<Rational> chain;
  Rational prev = z;
  for (int i = 1; i <= count; ++i) {
    Rational lo, hi;
    if (i < m) {
      lo = x[m + n - i], hi = x[m + n - i - 1];
    } else if (i == m) {
      lo = x[n], hi = z;
    } else if (i < m + n) {
      lo = x[m + n - i - 1], hi = x[m + n - i];
    } else {
      lo = z, hi = prev;
    }
    prev = largest_in(preimages(h, prev), lo, hi);
    chain.push_back(prev);
  }

  BackwardChainWitness w;
  w.side = Side::Right;
  w.prefix_length = m;
  w.z = z;
  w.limit = z;
  w.anchor = chain[m];
  std::vector<Rational> limits{z};
  for (const auto& comp : fixed_sets(h)) {
    for (const Rational& e : {comp.lo, comp.hi}) {
      if (e > z && e < chain.back()) limits.push_back(e);
    }
  }
  std::sort(limits.begin(), limits.end());
  for (const auto& l : limits) {
    auto reach = tail_reach(h, l);
    if (reach && *reach >= w.anchor) {
      w.limit = l;
      w.certified = true;
      break;
    }
  }
  w.chain = std::move(chain);
  if (o.mirrored) {
    w.side = Side::Left;
    w.z = o.back(w.z);
    w.limit = o.back(w.limit);
    w.anchor = o.back(w.anchor);
    for (auto& v : w.chain) v = o.back(v);
  }
  return w;
}

bool verify_trace(const PLMap& f, const ConstructionTrace& t) {
  const PLMap h = t.power == 1 ? f : iterate(f, t.power);
  const int n = static_cast<int>(t.chain.size());
  if (!covers_cyclically(h, t.chain) || t.result.period() != n || !is_orbit(h, t.result)) return false;
  for (int i = 0; i < n; ++i) {
    if (!t.chain[i].contains(t.result.points[i])) return false;
  }
  const auto tags = classify(from_orbit(t.result.points));
  if (std::find(tags.begin(), tags.end(), t.expected) == tags.end()) return false;
  if (!is_orbit(f, t.source) || h(t.z) != t.z || f(t.w) != t.source.points[0]) return false;
  if (t.aux_fixed) {
    for (const auto& v : *t.aux_fixed) {
      if (h(v) != v) return false;
    }
  }
  return true;
}

}  // namespace orbitforge
