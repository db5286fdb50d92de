#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitforge {

// Arbitrary-precision rational; GMP keeps it reduced with a positive
// denominator after every operation.
using Rational = mpq_class;

// Accepts "p/q" (q > 0) or a plain integer, with optional sign.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

std::vector<Rational> parse_rational_list(std::string_view text);
std::string join(const std::vector<Rational>& values, std::string_view sep = ",");

// A bounded interval of the line whose endpoints may be open or closed.
// Empty when lo > hi, or lo == hi with either end open.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;

  static Interval closed(const Rational& a, const Rational& b);
  static Interval open(const Rational& a, const Rational& b);
  static Interval point(const Rational& a);

  bool empty() const;
  bool degenerate() const { return lo == hi; }
  bool contains(const Rational& x) const;
  // Contains the other interval as a set.
  bool covers(const Interval& other) const;

  Interval intersect(const Interval& other) const;
  // Restrict to x > t (strict) or x >= t.
  Interval above(const Rational& t, bool strict) const;
  // Restrict to x < t (strict) or x <= t.
  Interval below(const Rational& t, bool strict) const;

  // Deterministic member of a non-empty interval: the left end when it is
  // included, otherwise the midpoint.
  Rational pick() const;
  Rational midpoint() const;

  bool operator==(const Interval& other) const = default;
};

std::string to_string(const Interval& iv);

// x -> slope * x + offset.
struct Affine {
  Rational slope{1};
  Rational offset{0};

  Rational operator()(const Rational& x) const { return slope * x + offset; }
  // (*this) after inner, i.e. x -> this(inner(x)).
  Affine after(const Affine& inner) const;
  Interval image(const Interval& iv) const;
  // {x in within : this(x) in target}.
  Interval preimage(const Interval& target, const Interval& within) const;
  bool is_identity() const { return slope == 1 && offset == 0; }

  bool operator==(const Affine& other) const = default;
};

}  // namespace orbitforge
