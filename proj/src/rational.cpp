#include "orbitforge/rational.hpp"

#include "orbitforge/errors.hpp"

#include <cctype>
#include <sstream>

namespace orbitforge {

namespace {

std::string trim(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool is_integer_literal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' ||
      den[0] == '+') {
    throw InvalidInput("malformed rational literal '" + std::string(text) + "'");
  }
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<Rational>& values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += to_string(values[i]);
  }
  return out;
}

Interval Interval::closed(const Rational& a, const Rational& b) { return {a, b, false, false}; }
Interval Interval::open(const Rational& a, const Rational& b) { return {a, b, true, true}; }
Interval Interval::point(const Rational& a) { return {a, a, false, false}; }

bool Interval::empty() const {
  if (lo > hi) return true;
  return lo == hi && (lo_open || hi_open);
}

bool Interval::contains(const Rational& x) const {
  if (x < lo || (lo_open && x == lo)) return false;
  if (x > hi || (hi_open && x == hi)) return false;
  return true;
}

bool Interval::covers(const Interval& other) const {
  if (other.empty()) return true;
  if (empty()) return false;
  if (other.lo < lo || (other.lo == lo && lo_open && !other.lo_open)) return false;
  if (other.hi > hi || (other.hi == hi && hi_open && !other.hi_open)) return false;
  return true;
}

Interval Interval::intersect(const Interval& other) const {
  Interval r = *this;
  if (other.lo > r.lo) {
    r.lo = other.lo;
    r.lo_open = other.lo_open;
  } else if (other.lo == r.lo) {
    r.lo_open = r.lo_open || other.lo_open;
  }
  if (other.hi < r.hi) {
    r.hi = other.hi;
    r.hi_open = other.hi_open;
  } else if (other.hi == r.hi) {
    r.hi_open = r.hi_open || other.hi_open;
  }
  return r;
}

Interval Interval::above(const Rational& t, bool strict) const {
  return intersect(Interval{t, hi, strict, false});
}

Interval Interval::below(const Rational& t, bool strict) const {
  return intersect(Interval{lo, t, lo_open, strict});
}

Rational Interval::midpoint() const {
  Rational m = (lo + hi) / 2;
  return m;
}

Rational Interval::pick() const {
  if (!lo_open) return lo;
  if (lo == hi) return lo;
  return midpoint();
}

std::string to_string(const Interval& iv) {
  std::ostringstream os;
  os << (iv.lo_open ? '(' : '[') << to_string(iv.lo) << ',' << to_string(iv.hi)
     << (iv.hi_open ? ')' : ']');
  return os.str();
}

Affine Affine::after(const Affine& inner) const {
  Affine r;
  r.slope = slope * inner.slope;
  r.offset = slope * inner.offset + offset;
  return r;
}

Interval Affine::image(const Interval& iv) const {
  const Rational a = (*this)(iv.lo);
  const Rational b = (*this)(iv.hi);
  if (slope > 0) return {a, b, iv.lo_open, iv.hi_open};
  if (slope < 0) return {b, a, iv.hi_open, iv.lo_open};
  return Interval::point(a);
}

Interval Affine::preimage(const Interval& target, const Interval& within) const {
  if (slope == 0) {
    if (target.contains(offset)) return within;
    return Interval{within.hi, within.lo, true, true};  // empty
  }
  Rational a = (target.lo - offset) / slope;
  Rational b = (target.hi - offset) / slope;
  Interval pre = slope > 0 ? Interval{a, b, target.lo_open, target.hi_open}
                           : Interval{b, a, target.hi_open, target.lo_open};
  return within.intersect(pre);
}

}  // namespace orbitforge
