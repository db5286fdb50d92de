#pragma once

#include "orbitforge/rational.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace orbitforge {

// Orbit type of a periodic orbit: sigma[r] is the spatial rank of the image
// of the point with spatial rank r. Always a single n-cycle with n >= 2.
class Pattern {
 public:
  // Throws InvalidInput unless sigma is one n-cycle on {0..n-1}, n >= 2.
  explicit Pattern(std::vector<int> sigma);

  int period() const { return static_cast<int>(sigma_.size()); }
  const std::vector<int>& sigma() const { return sigma_; }
  int operator[](std::size_t r) const { return sigma_[r]; }

  // Ranks visited by the orbit starting at spatial rank `start`.
  std::vector<int> ranks_in_time_order(int start = 0) const;

  auto operator<=>(const Pattern&) const = default;
  bool operator==(const Pattern&) const = default;

 private:
  std::vector<int> sigma_;
};

// "2,0,3,1"
Pattern parse_pattern(std::string_view text);
std::string to_string(const Pattern& p);

// Orientation reversal x -> -x: sigma'[r] = (n-1) - sigma[(n-1)-r].
Pattern mirror(const Pattern& p);

// Lexicographic minimum of {p, mirror(p)}.
Pattern canonical(const Pattern& p);

// One canonical representative per mirror class of n-cycles, sorted.
// Throws CapExceeded when n > max_period.
std::vector<Pattern> enumerate(int n, int max_period = 10);

// Pattern of a time-ordered list of distinct points. Throws DuplicatePoint.
Pattern from_orbit(const std::vector<Rational>& points);

struct TypeTag {
  enum class Kind { Monotone, Stefan, TwoParam };
  Kind kind;
  // Monotone: a = period. Stefan: a = odd period q. TwoParam: a = m <= b = n.
  int a = 0;
  int b = 0;

  static TypeTag monotone(int n) { return {Kind::Monotone, n, 0}; }
  static TypeTag stefan(int q) { return {Kind::Stefan, q, 0}; }
  // Normalizes to m <= n.
  static TypeTag two_param(int m, int n);

  int period() const;

  auto operator<=>(const TypeTag&) const = default;
  bool operator==(const TypeTag&) const = default;
};

std::string to_string(const TypeTag& t);

// Template permutations, with x_0 placed as in the displayed orderings.
Pattern monotone_template(int n);
Pattern stefan_template(int q);
// x_{m+n-1} < ... < x_n < x_0 < x_1 < ... < x_{n-1}; no normalization, so
// mirror(two_param_template(m, n)) == two_param_template(n, m).
Pattern two_param_template(int m, int n);
Pattern template_of(const TypeTag& t);

// Spatial rank of x_0 in the template for this tag.
int anchor_rank(const TypeTag& t);

// Every tag whose template equals p or mirror(p), sorted.
std::vector<TypeTag> classify(const Pattern& p);

// True when p equals the template itself (not its mirror).
bool matches_directly(const Pattern& p, const TypeTag& t);

}  // namespace orbitforge
