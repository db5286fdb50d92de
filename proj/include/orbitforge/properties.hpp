#pragma once

#include "orbitforge/plmap.hpp"

#include <compare>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace orbitforge {

inline constexpr int kInfinity = std::numeric_limits<int>::max();

// P(n), L(k,n), S(k,q), L2(k,m,n); n and m may be kInfinity where the
// family allows it.
struct PropertyDescriptor {
  enum class Family { P, L, S, L2 };
  Family family = Family::P;
  int k = 1;
  int a = 1;  // P: n, L: n, S: q, L2: m
  int b = 0;  // L2: n (a <= b)

  static PropertyDescriptor period(int n);
  static PropertyDescriptor monotone(int k, int n);
  static PropertyDescriptor stefan(int k, int q);
  // Normalized so the smaller parameter comes first; kInfinity sorts last.
  static PropertyDescriptor two_param(int k, int m, int n);

  // Any unbounded parameter, i.e. a backward-orbit property.
  bool infinite() const;

  auto operator<=>(const PropertyDescriptor&) const = default;
  bool operator==(const PropertyDescriptor&) const = default;
};

// "P(5)", "L(k=2,n=inf)", "S(k=1,q=5)", "L2(k=2,m=2,n=3)", "L2(k=1,m=2,n=inf)"
std::string to_string(const PropertyDescriptor& d);
PropertyDescriptor parse_descriptor(std::string_view text);

enum class Side { Right, Left };
std::string to_string(Side s);

// Evidence that a fixed point z of G has a strictly monotone backward orbit
// approaching from one side.
struct BackwardChainWitness {
  Side side = Side::Right;
  // Chain points placed on the far side of z before the tail begins (the m
  // of L2(k,m,inf)); 0 for L(k,inf).
  int prefix_length = 0;
  Rational z;
  Rational limit;   // fixed point the tail converges to
  Rational anchor;  // first tail point (x_{-1}, or x_{-m-1} after a prefix)
  std::vector<Rational> chain;  // x_{-1}, x_{-2}, ...
  bool certified = false;       // tail criterion verified at breakpoints
};

struct TwoSidedChainWitness {
  BackwardChainWitness right;
  BackwardChainWitness left;
};

using Witness = std::variant<FiniteOrbit, BackwardChainWitness, TwoSidedChainWitness>;

enum class Verdict { Holds, Fails, Unknown };
std::string to_string(Verdict v);

struct PropertyStatus {
  Verdict verdict = Verdict::Fails;
  std::optional<Witness> witness;
  std::string reason;  // set for Unknown

  static PropertyStatus witnessed(Witness w) { return {Verdict::Holds, std::move(w), {}}; }
  static PropertyStatus failed() { return {Verdict::Fails, std::nullopt, {}}; }
  static PropertyStatus undecided(std::string why) { return {Verdict::Unknown, std::nullopt, std::move(why)}; }

  bool holds() const { return verdict == Verdict::Holds; }
  bool fails() const { return verdict == Verdict::Fails; }
  bool unknown() const { return verdict == Verdict::Unknown; }
};

struct PropertyConfig {
  std::vector<int> powers{1, 2, 4};
  int max_period = 9;
  int max_two_param = 4;
  int max_prefix = 6;
  int chain_depth = 8;
  SearchLimits limits;
};

struct TailCertificate {
  Rational limit;
  Rational anchor;
};

// Right side: the least-anchored (L, w) with w > z, G(w) = z, L fixed in
// [z, w) and max_{[L,y]} G >= y for every y in (L, w]. That holds iff z has
// an infinite strictly decreasing backward orbit inside (z, w]:
//  - sufficient: G(L) = L < y <= max, so the intermediate value theorem gives
//    a preimage of y in (L, y); repeat forever.
//  - necessary: the chain's limit is fixed by continuity; take it as L, and
//    for y in (L, w] some chain point below y maps onto a point >= y.
// Left side is the mirror image with running minima. Throws NotAFixedPoint.
std::optional<TailCertificate> decide_tail(const PLMap& g, const Rational& z, Side side);

// For a fixed point L, the largest t such that max_{[L,y]} G >= y on (L, t]
// (right side); nullopt when no such t > L exists.
std::optional<Rational> tail_reach(const PLMap& g, const Rational& limit);

// `count` points continuing a right-side chain from `start` toward `limit`,
// each the smallest preimage of its predecessor inside (limit, predecessor).
std::vector<Rational> extend_chain(const PLMap& g, const Rational& limit, const Rational& start,
                                   int count);

// Fixed points worth trying as z or L: isolated fixed points, ends of fixed
// intervals, and values G takes at breakpoints inside fixed intervals (plus
// midpoints between neighbouring candidates there).
std::vector<Rational> fixed_point_candidates(const PLMap& g);

using PropertyReport = std::vector<std::pair<PropertyDescriptor, PropertyStatus>>;

// Decides properties of one map, caching iterates and results.
class PropertyChecker {
 public:
  explicit PropertyChecker(PLMap f, PropertyConfig cfg = {});

  const PLMap& map() const { return f_; }
  const PropertyConfig& config() const { return cfg_; }

  PropertyStatus check(const PropertyDescriptor& d);
  // f^k, materialized once. Throws CapExceeded.
  const PLMap& power(int k);

 private:
  PropertyStatus decide(const PropertyDescriptor& d);
  PropertyStatus decide_typed(const PLMap& g, const Pattern& tmpl, int anchor);
  PropertyStatus decide_one_sided(const PLMap& g);
  PropertyStatus decide_two_sided(const PLMap& g);
  PropertyStatus decide_prefixed(const PLMap& g, int m);

  PLMap f_;
  PropertyConfig cfg_;
  std::map<int, PLMap> powers_;
  std::map<PropertyDescriptor, PropertyStatus> cache_;
};

PropertyStatus check(const PLMap& f, const PropertyDescriptor& d, const PropertyConfig& cfg = {});

// Deterministic descriptor grid for the configuration.
std::vector<PropertyDescriptor> property_grid(const PropertyConfig& cfg = {});
PropertyReport check_all(const PLMap& f, const PropertyConfig& cfg = {});

// Re-checks a Holds witness by exact evaluation on f.
bool verify_witness(const PLMap& f, const PropertyDescriptor& d, const Witness& w);

}  // namespace orbitforge
