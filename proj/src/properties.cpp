#include "orbitforge/properties.hpp"

#include "orbitforge/errors.hpp"
#include "orbitforge/orbit_search.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace orbitforge {

// ---------------------------------------------------------------------------
// Descriptors

PropertyDescriptor PropertyDescriptor::period(int n) {
  if (n < 1) throw InvalidInput("P(n) needs n >= 1");
  return {Family::P, 1, n, 0};
}

PropertyDescriptor PropertyDescriptor::monotone(int k, int n) {
  if (k < 1 || n < 1) throw InvalidInput("L(k,n) needs k, n >= 1");
  return {Family::L, k, n, 0};
}

PropertyDescriptor PropertyDescriptor::stefan(int k, int q) {
  if (k < 1 || q < 3 || q % 2 == 0 || q == kInfinity) {
    throw InvalidInput("S(k,q) needs k >= 1 and odd q >= 3");
  }
  return {Family::S, k, q, 0};
}

PropertyDescriptor PropertyDescriptor::two_param(int k, int m, int n) {
  if (k < 1 || m < 1 || n < 1) throw InvalidInput("L2(k,m,n) needs k, m, n >= 1");
  return {Family::L2, k, std::min(m, n), std::max(m, n)};
}

bool PropertyDescriptor::infinite() const {
  return a == kInfinity || (family == Family::L2 && b == kInfinity);
}

namespace {

std::string param(int v) { return v == kInfinity ? "inf" : std::to_string(v); }

int parse_param(const std::string& s, bool allow_inf) {
  if (s == "inf") {
    if (!allow_inf) throw InvalidInput("parameter cannot be infinite here");
    return kInfinity;
  }
  if (s.empty() || s.size() > 6 ||
      !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw InvalidInput("malformed descriptor parameter '" + s + "'");
  }
  return std::stoi(s);
}

}  // namespace

std::string to_string(const PropertyDescriptor& d) {
  using F = PropertyDescriptor::Family;
  const std::string k = "k=" + std::to_string(d.k);
  switch (d.family) {
    case F::P:
      return "P(" + std::to_string(d.a) + ")";
    case F::L:
      return "L(" + k + ",n=" + param(d.a) + ")";
    case F::S:
      return "S(" + k + ",q=" + std::to_string(d.a) + ")";
    case F::L2:
      return "L2(" + k + ",m=" + param(d.a) + ",n=" + param(d.b) + ")";
  }
  return {};
}

PropertyDescriptor parse_descriptor(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw InvalidInput("malformed descriptor '" + std::string(text) + "'");
  }
  const std::string name = s.substr(0, open);
  const std::string body = s.substr(open + 1, s.size() - open - 2);
  if (name == "P") {
    std::string v = body.rfind("n=", 0) == 0 ? body.substr(2) : body;
    return PropertyDescriptor::period(parse_param(v, false));
  }
  std::map<std::string, std::string> kv;
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = body.substr(start, comma - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("malformed descriptor '" + std::string(text) + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
    start = comma + 1;
  }
  auto need = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidInput("descriptor '" + std::string(text) + "' lacks " + key);
    return it->second;
  };
  const int k = parse_param(need("k"), false);
  std::size_t expected = 0;
  PropertyDescriptor d;
  if (name == "L") {
    d = PropertyDescriptor::monotone(k, parse_param(need("n"), true));
    expected = 2;
  } else if (name == "S") {
    d = PropertyDescriptor::stefan(k, parse_param(need("q"), false));
    expected = 2;
  } else if (name == "L2") {
    d = PropertyDescriptor::two_param(k, parse_param(need("m"), true), parse_param(need("n"), true));
    expected = 3;
  } else {
    throw InvalidInput("unknown property family '" + name + "'");
  }
  if (kv.size() != expected) throw InvalidInput("unexpected keys in descriptor '" + std::string(text) + "'");
  return d;
}

std::string to_string(Side s) { return s == Side::Right ? "right" : "left"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    case Verdict::Unknown:
      return "unknown";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Backward-orbit machinery (right side; left side goes through the mirror)

namespace {

Interval empty_interval() { return Interval{Rational(1), Rational(0), true, true}; }

// Restrict dom to {x : a(x) > b(x)}.
Interval restrict_greater(const Interval& dom, const Affine& a, const Affine& b) {
  const Rational c = a.slope - b.slope;
  const Rational d = a.offset - b.offset;
  if (c == 0) return d > 0 ? dom : empty_interval();
  const Rational root = -d / c;
  return c > 0 ? dom.above(root, true) : dom.below(root, true);
}

// Candidate limits L in [z, ...): z itself and the fixed-set endpoints above it.
std::vector<Rational> limits_above(const PLMap& g, const Rational& z) {
  std::vector<Rational> out{z};
  for (const auto& comp : fixed_sets(g)) {
    if (comp.lo > z) out.push_back(comp.lo);
    if (comp.hi > z && comp.hi != comp.lo) out.push_back(comp.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Smallest member of a closed point set lying in (lo, hi]; when the infimum
// lo itself is approached inside a component, a point just above it.
std::optional<Rational> smallest_in(const PointSet& set, const Rational& lo, const Rational& hi) {
  for (const auto& comp : set) {
    if (comp.hi <= lo) continue;
    if (comp.lo > hi) return std::nullopt;
    if (comp.lo > lo) return comp.lo;
    const Rational top = comp.hi < hi ? comp.hi : hi;
    Rational mid = (lo + top) / 2;
    return mid;
  }
  return std::nullopt;
}

std::optional<TailCertificate> decide_tail_right(const PLMap& g, const Rational& z) {
  const PointSet pre = preimages(g, z);
  for (const Rational& limit : limits_above(g, z)) {
    const auto reach = tail_reach(g, limit);
    if (!reach) continue;
    if (auto w = smallest_in(pre, limit, *reach)) return TailCertificate{limit, *w};
  }
  return std::nullopt;
}

BackwardChainWitness reflect_witness(const PLMap& g, BackwardChainWitness w) {
  w.side = w.side == Side::Right ? Side::Left : Side::Right;
  w.z = reflect(g, w.z);
  w.limit = reflect(g, w.limit);
  w.anchor = reflect(g, w.anchor);
  for (auto& x : w.chain) x = reflect(g, x);
  return w;
}

BackwardChainWitness tail_witness_right(const PLMap& g, const Rational& z, const TailCertificate& cert,
                                        int depth) {
  BackwardChainWitness w;
  w.side = Side::Right;
  w.z = z;
  w.limit = cert.limit;
  w.anchor = cert.anchor;
  w.chain.push_back(cert.anchor);
  for (auto& x : extend_chain(g, cert.limit, cert.anchor, std::max(0, depth - 1))) {
    w.chain.push_back(std::move(x));
  }
  w.certified = true;
  return w;
}

std::optional<BackwardChainWitness> one_sided(const PLMap& g, const Rational& z, Side side, int depth) {
  if (side == Side::Right) {
    auto cert = decide_tail_right(g, z);
    if (!cert) return std::nullopt;
    return tail_witness_right(g, z, *cert, depth);
  }
  const PLMap m = mirror_conjugate(g);
  const Rational mz = reflect(g, z);
  auto cert = decide_tail_right(m, mz);
  if (!cert) return std::nullopt;
  return reflect_witness(g, tail_witness_right(m, mz, *cert, depth));
}

// Prefix x_{-1} < ... < x_{-m} < z, then the tail to the right of z.
// Branches over the piece holding each prefix point and keeps the exact set
// of admissible positions for the newest one.
class PrefixSearch {
 public:
  PrefixSearch(const PLMap& g, const Rational& z, int m, int depth, SearchBudget& budget)
      : g_(g), z_(z), m_(m), depth_(depth), budget_(budget) {
    for (const Rational& limit : limits_above(g, z)) {
      if (auto reach = tail_reach(g, limit)) tails_.emplace_back(limit, *reach);
    }
  }

  std::optional<BackwardChainWitness> run() {
    if (tails_.empty()) return std::nullopt;
    sets_.assign(1, Interval::point(z_));
    return descend(0);
  }

 private:
  std::optional<BackwardChainWitness> descend(int j) {
    budget_.tick();
    if (j == m_) return anchor();
    for (const Piece& p : g_.pieces()) {
      if (p.lo >= z_) break;
      Interval next = p.map.preimage(sets_[j], p.domain()).below(z_, true);
      if (j >= 1 && !next.empty()) next = restrict_greater(next, Affine{}, p.map);
      if (next.empty()) continue;
      sets_.resize(j + 2);
      sets_[j + 1] = next;
      if (auto w = descend(j + 1)) return w;
    }
    return std::nullopt;
  }

  std::optional<BackwardChainWitness> anchor() {
    for (const Piece& p : g_.pieces()) {
      if (p.hi <= z_) continue;
      const Interval admissible = p.map.preimage(sets_[m_], p.domain()).above(z_, true);
      if (admissible.empty()) continue;
      for (const auto& [limit, reach] : tails_) {
        const Interval spot = admissible.intersect(Interval{limit, reach, true, false});
        if (spot.empty()) continue;
        return build(spot.pick(), limit);
      }
    }
    return std::nullopt;
  }

  BackwardChainWitness build(const Rational& a, const Rational& limit) {
    BackwardChainWitness w;
    w.side = Side::Right;
    w.prefix_length = m_;
    w.z = z_;
    w.limit = limit;
    w.anchor = a;
    std::vector<Rational> prefix(m_);
    Rational cur = a;
    for (int j = m_ - 1; j >= 0; --j) {
      cur = g_(cur);
      prefix[j] = cur;
    }
    w.chain = std::move(prefix);
    w.chain.push_back(a);
    for (auto& x : extend_chain(g_, limit, a, std::max(0, depth_ - m_ - 1))) w.chain.push_back(std::move(x));
    w.certified = true;
    return w;
  }

  const PLMap& g_;
  Rational z_;
  int m_;
  int depth_;
  SearchBudget& budget_;
  std::vector<std::pair<Rational, Rational>> tails_;
  std::vector<Interval> sets_;
};

}  // namespace

std::optional<Rational> tail_reach(const PLMap& g, const Rational& limit) {
  const auto& pieces = g.pieces();
  if (limit >= g.hi()) return std::nullopt;
  std::size_t i = g.piece_at(limit);
  if (pieces[i].hi == limit) ++i;
  Rational running = limit;  // max of G over [limit, current point]

  // Checks h(y) = M(y) - y on a segment [s, e] where M is the affine `m`;
  // h(s) >= 0 holds on entry. Returns the first zero when h(e) < 0.
  auto segment = [](const Rational& e, const Affine& m) -> std::optional<Rational> {
    if (m(e) >= e) return std::nullopt;
    return Rational(m.offset / (1 - m.slope));
  };
  for (; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const Rational u = p.lo > limit ? p.lo : limit;
    const Rational& v = p.hi;
    std::optional<Rational> stop;
    if (p.map.slope > 0 && p.map(v) > running) {
      if (p.map(u) >= running) {
        stop = segment(v, p.map);
      } else {
        const Rational cross = (running - p.map.offset) / p.map.slope;
        stop = segment(cross, Affine{0, running});
        if (!stop) stop = segment(v, p.map);
      }
      if (!stop) running = p.map(v);
    } else {
      stop = segment(v, Affine{0, running});
    }
    if (stop) {
      if (*stop <= limit) return std::nullopt;
      return stop;
    }
  }
  return g.hi();
}

std::optional<TailCertificate> decide_tail(const PLMap& g, const Rational& z, Side side) {
  if (g(z) != z) throw NotAFixedPoint(to_string(z) + " is not fixed");
  if (side == Side::Right) return decide_tail_right(g, z);
  auto cert = decide_tail_right(mirror_conjugate(g), reflect(g, z));
  if (!cert) return std::nullopt;
  return TailCertificate{reflect(g, cert->limit), reflect(g, cert->anchor)};
}

std::vector<Rational> extend_chain(const PLMap& g, const Rational& limit, const Rational& start,
                                   int count) {
  std::vector<Rational> out;
  Rational cur = start;
  for (int i = 0; i < count; ++i) {
    auto next = smallest_in(preimages(g, cur), limit, cur);
    if (!next || *next >= cur) throw std::logic_error("backward chain cannot be continued");
    cur = *next;
    out.push_back(cur);
  }
  return out;
}

std::vector<Rational> fixed_point_candidates(const PLMap& g) {
  std::vector<Rational> out;
  for (const auto& comp : fixed_sets(g)) {
    if (comp.degenerate()) {
      out.push_back(comp.lo);
      continue;
    }
    std::vector<Rational> inside{comp.lo, comp.hi};
    for (const Node& n : g.nodes()) {
      if (n.y > comp.lo && n.y < comp.hi) inside.push_back(n.y);
    }
    std::sort(inside.begin(), inside.end());
    inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
    for (std::size_t i = 0; i < inside.size(); ++i) {
      out.push_back(inside[i]);
      if (i + 1 < inside.size()) out.push_back((inside[i] + inside[i + 1]) / 2);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Checker

PropertyChecker::PropertyChecker(PLMap f, PropertyConfig cfg) : f_(std::move(f)), cfg_(std::move(cfg)) {}

const PLMap& PropertyChecker::power(int k) {
  auto it = powers_.find(k);
  if (it == powers_.end()) it = powers_.emplace(k, iterate(f_, k, cfg_.limits.piece_cap)).first;
  return it->second;
}

PropertyStatus PropertyChecker::check(const PropertyDescriptor& d) {
  auto it = cache_.find(d);
  if (it != cache_.end()) return it->second;
  PropertyStatus s;
  try {
    s = decide(d);
  } catch (const CapExceeded& e) {
    s = PropertyStatus::undecided(e.what());
  }
  cache_.emplace(d, s);
  return s;
}

PropertyStatus PropertyChecker::decide(const PropertyDescriptor& d) {
  using F = PropertyDescriptor::Family;
  if (d.family == F::P) {
    auto o = find_periodic_orbit(f_, d.a, cfg_.limits);
    return o ? PropertyStatus::witnessed(*o) : PropertyStatus::failed();
  }
  const PLMap& g = power(d.k);
  switch (d.family) {
    case F::L:
      if (d.a == kInfinity) return decide_one_sided(g);
      if (d.a == 1) {
        // every self-map has a fixed point
        return PropertyStatus::witnessed(FiniteOrbit{{fixed_point_candidates(g).front()}});
      }
      return decide_typed(g, monotone_template(d.a), 0);
    case F::S:
      return decide_typed(g, stefan_template(d.a), (d.a - 1) / 2);
    case F::L2:
      if (d.a == kInfinity) return decide_two_sided(g);
      if (d.b == kInfinity) return decide_prefixed(g, d.a);
      return decide_typed(g, two_param_template(d.a, d.b), d.a);
    case F::P:
      break;
  }
  return PropertyStatus::failed();
}

PropertyStatus PropertyChecker::decide_typed(const PLMap& g, const Pattern& tmpl, int anchor) {
  const int n = tmpl.period();
  int rank = anchor;
  auto found = find_orbit_with_pattern(g, tmpl, cfg_.limits);
  const Pattern reversed = mirror(tmpl);
  if (!found && reversed != tmpl) {
    found = find_orbit_with_pattern(g, reversed, cfg_.limits);
    rank = n - 1 - anchor;
  }
  if (!found) return PropertyStatus::failed();
  // found starts at its leftmost point; rotate x_0 to the front
  std::vector<Rational> sorted = found->points;
  std::sort(sorted.begin(), sorted.end());
  auto start = std::find(found->points.begin(), found->points.end(), sorted[rank]);
  std::rotate(found->points.begin(), start, found->points.end());
  return PropertyStatus::witnessed(*found);
}

PropertyStatus PropertyChecker::decide_one_sided(const PLMap& g) {
  for (const Rational& z : fixed_point_candidates(g)) {
    for (Side side : {Side::Right, Side::Left}) {
      if (auto w = one_sided(g, z, side, cfg_.chain_depth)) return PropertyStatus::witnessed(*w);
    }
  }
  return PropertyStatus::failed();
}

PropertyStatus PropertyChecker::decide_two_sided(const PLMap& g) {
  for (const Rational& z : fixed_point_candidates(g)) {
    auto right = one_sided(g, z, Side::Right, cfg_.chain_depth);
    if (!right) continue;
    auto left = one_sided(g, z, Side::Left, cfg_.chain_depth);
    if (!left) continue;
    return PropertyStatus::witnessed(TwoSidedChainWitness{*right, *left});
  }
  return PropertyStatus::failed();
}

PropertyStatus PropertyChecker::decide_prefixed(const PLMap& g, int m) {
  if (m > cfg_.max_prefix) {
    return PropertyStatus::undecided("prefix length " + std::to_string(m) + " exceeds cap " +
                                   std::to_string(cfg_.max_prefix));
  }
  SearchBudget budget(cfg_.limits.branch_cap);
  const int depth = std::max(cfg_.chain_depth, m + 2);
  const PLMap mirrored = mirror_conjugate(g);
  for (const Rational& z : fixed_point_candidates(g)) {
    if (auto w = PrefixSearch(g, z, m, depth, budget).run()) return PropertyStatus::witnessed(*w);
    if (auto w = PrefixSearch(mirrored, reflect(g, z), m, depth, budget).run()) {
      return PropertyStatus::witnessed(reflect_witness(g, *w));
    }
  }
  return PropertyStatus::failed();
}

PropertyStatus check(const PLMap& f, const PropertyDescriptor& d, const PropertyConfig& cfg) {
  PropertyChecker checker(f, cfg);
  return checker.check(d);
}

std::vector<PropertyDescriptor> property_grid(const PropertyConfig& cfg) {
  using D = PropertyDescriptor;
  std::vector<D> out;
  for (int n = 1; n <= cfg.max_period; ++n) out.push_back(D::period(n));
  for (int k : cfg.powers) {
    for (int n = 1; n <= cfg.max_period; ++n) out.push_back(D::monotone(k, n));
    out.push_back(D::monotone(k, kInfinity));
    for (int q = 3; q <= cfg.max_period; q += 2) out.push_back(D::stefan(k, q));
    for (int m = 1; m <= cfg.max_two_param; ++m) {
      for (int n = m; n <= cfg.max_two_param; ++n) out.push_back(D::two_param(k, m, n));
    }
    for (int m = 1; m <= cfg.max_prefix; ++m) out.push_back(D::two_param(k, m, kInfinity));
    out.push_back(D::two_param(k, kInfinity, kInfinity));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PropertyReport check_all(const PLMap& f, const PropertyConfig& cfg) {
  PropertyChecker checker(f, cfg);
  PropertyReport out;
  for (const auto& d : property_grid(cfg)) out.emplace_back(d, checker.check(d));
  return out;
}

// ---------------------------------------------------------------------------
// Witness re-verification

namespace {

// Chain relations, template ordering and the tail criterion, right side.
bool verify_chain_right(const PLMap& g, const BackwardChainWitness& w) {
  const int m = w.prefix_length;
  const auto& c = w.chain;
  if (static_cast<int>(c.size()) < m + 1 || !w.certified) return false;
  if (g(w.z) != w.z || g(w.limit) != w.limit) return false;
  for (const auto& x : c) {
    if (!g.domain().contains(x)) return false;
  }
  if (g(c[0]) != w.z) return false;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (g(c[i + 1]) != c[i]) return false;
  }
  // x_{-1} < ... < x_{-m} < z
  for (int i = 0; i < m; ++i) {
    const Rational& next = i + 1 < m ? c[i + 1] : w.z;
    if (!(c[i] < next)) return false;
  }
  // z <= limit < ... < x_{-m-2} < x_{-m-1} = anchor
  if (c[m] != w.anchor || !(w.z <= w.limit)) return false;
  for (std::size_t i = m; i + 1 < c.size(); ++i) {
    if (!(c[i + 1] < c[i])) return false;
  }
  if (!(w.limit < c.back())) return false;
  const auto reach = tail_reach(g, w.limit);
  return reach && w.anchor <= *reach;
}

bool verify_chain(const PLMap& g, const BackwardChainWitness& w) {
  if (w.side == Side::Right) return verify_chain_right(g, w);
  return verify_chain_right(mirror_conjugate(g), reflect_witness(g, w));
}

}  // namespace

bool verify_witness(const PLMap& f, const PropertyDescriptor& d, const Witness& w) {
  using F = PropertyDescriptor::Family;
  const PLMap g = d.family == F::P ? f : iterate(f, d.k);
  if (const auto* orbit = std::get_if<FiniteOrbit>(&w)) {
    if (d.infinite() || !is_orbit(g, *orbit)) return false;
    const int n = orbit->period();
    switch (d.family) {
      case F::P:
        return n == d.a;
      case F::L:
        if (d.a == 1) return n == 1;
        return n == d.a && canonical(from_orbit(orbit->points)) == canonical(monotone_template(n));
      case F::S:
        return n == d.a && canonical(from_orbit(orbit->points)) == canonical(stefan_template(n));
      case F::L2:
        return n == d.a + d.b &&
               canonical(from_orbit(orbit->points)) == canonical(two_param_template(d.a, d.b));
    }
    return false;
  }
  if (const auto* chain = std::get_if<BackwardChainWitness>(&w)) {
    if (d.family == F::L && d.a == kInfinity) return chain->prefix_length == 0 && verify_chain(g, *chain);
    if (d.family == F::L2 && d.a != kInfinity && d.b == kInfinity) {
      return chain->prefix_length == d.a && verify_chain(g, *chain);
    }
    return false;
  }
  const auto& two = std::get<TwoSidedChainWitness>(w);
  if (!(d.family == F::L2 && d.a == kInfinity)) return false;
  return two.right.side == Side::Right && two.left.side == Side::Left && two.right.z == two.left.z &&
         two.right.prefix_length == 0 && two.left.prefix_length == 0 && verify_chain(g, two.right) &&
         verify_chain(g, two.left);
}

}  // namespace orbitforge
