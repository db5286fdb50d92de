#include "orbitforge/plmap.hpp"

#include "orbitforge/errors.hpp"

#include <algorithm>

namespace orbitforge {

namespace {

// Drops interior nodes that lie on the segment through their neighbours.
std::vector<Node> merge_collinear(std::vector<Node> nodes) {
  std::vector<Node> out;
  out.reserve(nodes.size());
  for (auto& node : nodes) {
    while (out.size() >= 2) {
      const Node& a = out[out.size() - 2];
      const Node& b = out.back();
      // (b - a) x (node - a) == 0
      if ((b.x - a.x) * (node.y - a.y) == (b.y - a.y) * (node.x - a.x)) {
        out.pop_back();
      } else {
        break;
      }
    }
    out.push_back(std::move(node));
  }
  return out;
}

// Sorted closed intervals, merged where they touch or overlap.
PointSet normalize(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  PointSet out;
  for (auto& iv : parts) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace

PLMap::PLMap(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw InvalidInput("a map needs at least two nodes");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i - 1].x < nodes_[i].x)) {
      throw InvalidInput("node x-coordinates must be strictly increasing");
    }
  }
  for (const auto& node : nodes_) {
    if (node.y < lo() || node.y > hi()) {
      throw InvalidInput("node value " + to_string(node.y) + " leaves the domain (not a self-map)");
    }
  }
  pieces_.reserve(nodes_.size() - 1);
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i - 1];
    const Node& b = nodes_[i];
    Affine map;
    map.slope = (b.y - a.y) / (b.x - a.x);
    map.offset = a.y - map.slope * a.x;
    pieces_.push_back({a.x, b.x, map});
  }
}

std::size_t PLMap::piece_at(const Rational& x) const {
  if (x < lo() || x > hi()) throw OutOfDomain(to_string(x) + " is outside the domain");
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Piece& p, const Rational& v) { return p.hi < v; });
  return static_cast<std::size_t>(it - pieces_.begin());
}

Rational PLMap::operator()(const Rational& x) const {
  const Piece& p = pieces_[piece_at(x)];
  if (x == p.lo) return nodes_[&p - pieces_.data()].y;
  if (x == p.hi) return nodes_[&p - pieces_.data() + 1].y;
  return p.map(x);
}

Interval PLMap::image(const Interval& iv) const {
  const std::size_t first = piece_at(iv.lo);
  const std::size_t last = piece_at(iv.hi);
  Rational mn = (*this)(iv.lo);
  Rational mx = mn;
  auto consider = [&](const Rational& v) {
    if (v < mn) mn = v;
    if (v > mx) mx = v;
  };
  consider((*this)(iv.hi));
  for (std::size_t i = first; i < last; ++i) consider(nodes_[i + 1].y);
  return Interval::closed(mn, mx);
}

PLMap parse_map(std::string_view text) {
  std::vector<Node> nodes;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(start, comma - start);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidInput("map node '" + std::string(item) + "' is not of the form x:y");
    }
    nodes.push_back({parse_rational(item.substr(0, colon)), parse_rational(item.substr(colon + 1))});
    start = comma + 1;
  }
  return PLMap(std::move(nodes));
}

std::string to_string(const PLMap& f) {
  std::string out;
  for (std::size_t i = 0; i < f.nodes().size(); ++i) {
    if (i) out += ',';
    out += to_string(f.nodes()[i].x) + ":" + to_string(f.nodes()[i].y);
  }
  return out;
}

PLMap connect_the_dots(const Pattern& p) {
  std::vector<Node> nodes;
  nodes.reserve(p.period());
  for (int i = 0; i < p.period(); ++i) nodes.push_back({Rational(i), Rational(p[i])});
  return PLMap(std::move(nodes));
}

Rational eval(const PLMap& f, const Rational& x) { return f(x); }

PLMap compose(const PLMap& outer, const PLMap& inner, std::size_t piece_cap) {
  const auto& breaks = outer.nodes();
  std::vector<Rational> xs;
  xs.push_back(inner.lo());
  for (const Piece& p : inner.pieces()) {
    const Rational ya = p.map(p.lo);
    const Rational yb = p.map(p.hi);
    if (ya != yb) {
      // outer breakpoints strictly between ya and yb, in x order
      const Rational& lo = ya < yb ? ya : yb;
      const Rational& hi = ya < yb ? yb : ya;
      std::vector<Rational> cuts;
      for (const Node& b : breaks) {
        if (b.x > lo && b.x < hi) cuts.push_back((b.x - p.map.offset) / p.map.slope);
      }
      if (ya > yb) std::reverse(cuts.begin(), cuts.end());
      for (auto& c : cuts) xs.push_back(std::move(c));
    }
    xs.push_back(p.hi);
    if (xs.size() > piece_cap + 1) {
      throw CapExceeded("composition exceeds piece cap " + std::to_string(piece_cap));
    }
  }
  std::vector<Node> nodes;
  nodes.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = outer(inner(x));
    nodes.push_back({std::move(x), std::move(y)});
  }
  return PLMap(merge_collinear(std::move(nodes)));
}

PLMap iterate(const PLMap& f, int k, std::size_t piece_cap) {
  if (k < 1) throw InvalidInput("iterate needs k >= 1");
  PLMap g = f;
  for (int i = 1; i < k; ++i) g = compose(f, g, piece_cap);
  return g;
}

Rational reflect(const PLMap& f, const Rational& x) {
  Rational r = f.lo() + f.hi() - x;
  return r;
}

PLMap mirror_conjugate(const PLMap& f) {
  std::vector<Node> nodes;
  nodes.reserve(f.nodes().size());
  for (auto it = f.nodes().rbegin(); it != f.nodes().rend(); ++it) {
    nodes.push_back({reflect(f, it->x), reflect(f, it->y)});
  }
  return PLMap(std::move(nodes));
}

PointSet fixed_sets(const PLMap& f) {
  std::vector<Interval> parts;
  for (const Piece& p : f.pieces()) {
    if (p.map.slope == 1) {
      if (p.map.offset == 0) parts.push_back(p.domain());
      continue;
    }
    Rational x = p.map.offset / (1 - p.map.slope);
    if (p.domain().contains(x)) parts.push_back(Interval::point(x));
  }
  return normalize(std::move(parts));
}

PointSet preimages(const PLMap& f, const Rational& y) {
  std::vector<Interval> parts;
  for (const Piece& p : f.pieces()) {
    if (p.map.slope == 0) {
      if (p.map.offset == y) parts.push_back(p.domain());
      continue;
    }
    Rational x = (y - p.map.offset) / p.map.slope;
    if (p.domain().contains(x)) parts.push_back(Interval::point(x));
  }
  return normalize(std::move(parts));
}

FiniteOrbit rotate_to_leftmost(const FiniteOrbit& orbit) {
  FiniteOrbit out = orbit;
  auto it = std::min_element(out.points.begin(), out.points.end());
  std::rotate(out.points.begin(), it, out.points.end());
  return out;
}

FiniteOrbit orbit_of(const PLMap& f, const Rational& x, int n) {
  FiniteOrbit o;
  o.points.reserve(n);
  Rational cur = x;
  for (int i = 0; i < n; ++i) {
    o.points.push_back(cur);
    if (i + 1 < n) cur = f(cur);
  }
  return o;
}

bool is_orbit(const PLMap& f, const FiniteOrbit& orbit) {
  const int n = orbit.period();
  if (n < 1) return false;
  for (int i = 0; i < n; ++i) {
    if (!f.domain().contains(orbit.points[i])) return false;
    if (f(orbit.points[i]) != orbit.points[(i + 1) % n]) return false;
  }
  std::vector<Rational> sorted = orbit.points;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

const FiniteOrbit& representative(const PeriodicOrbit& o) {
  if (const auto* fo = std::get_if<FiniteOrbit>(&o)) return *fo;
  return std::get<OrbitFamily>(o).representative;
}

}  // namespace orbitforge
