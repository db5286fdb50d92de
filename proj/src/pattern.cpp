#include "orbitforge/pattern.hpp"

#include "orbitforge/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace orbitforge {

Pattern::Pattern(std::vector<int> sigma) : sigma_(std::move(sigma)) {
  const int n = period();
  if (n < 2) throw InvalidInput("a pattern needs period at least 2");
  std::vector<bool> seen(n, false);
  for (int v : sigma_) {
    if (v < 0 || v >= n || seen[v]) throw InvalidInput("pattern is not a permutation");
    seen[v] = true;
  }
  int r = 0;
  for (int step = 1; step <= n; ++step) {
    r = sigma_[r];
    if (r == 0 && step < n) throw InvalidInput("pattern is not a single cycle");
  }
}

std::vector<int> Pattern::ranks_in_time_order(int start) const {
  std::vector<int> out;
  out.reserve(sigma_.size());
  int r = start;
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    out.push_back(r);
    r = sigma_[r];
  }
  return out;
}

Pattern parse_pattern(std::string_view text) {
  std::vector<int> sigma;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw InvalidInput("malformed pattern '" + std::string(text) + "'");
    for (char c : token) {
      if (c < '0' || c > '9') throw InvalidInput("malformed pattern '" + std::string(text) + "'");
    }
    if (token.size() > 6) throw InvalidInput("pattern entry out of range");
    sigma.push_back(std::stoi(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t') continue;
    if (c == ',') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return Pattern(std::move(sigma));
}

std::string to_string(const Pattern& p) {
  std::string out;
  for (int i = 0; i < p.period(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out;
}

Pattern mirror(const Pattern& p) {
  const int n = p.period();
  std::vector<int> s(n);
  for (int r = 0; r < n; ++r) s[r] = (n - 1) - p[(n - 1) - r];
  return Pattern(std::move(s));
}

Pattern canonical(const Pattern& p) {
  Pattern m = mirror(p);
  return m < p ? m : p;
}

std::vector<Pattern> enumerate(int n, int max_period) {
  if (n < 2) throw InvalidInput("period must be at least 2");
  if (n > max_period) {
    throw CapExceeded("enumeration of period " + std::to_string(n) + " exceeds cap " +
                      std::to_string(max_period));
  }
  // Cycles 0 -> c[0] -> c[1] -> ... -> 0 for every arrangement c of 1..n-1.
  std::vector<int> order(n - 1);
  std::iota(order.begin(), order.end(), 1);
  std::set<Pattern> classes;
  do {
    std::vector<int> sigma(n);
    int prev = 0;
    for (int v : order) {
      sigma[prev] = v;
      prev = v;
    }
    sigma[prev] = 0;
    classes.insert(canonical(Pattern(std::move(sigma))));
  } while (std::next_permutation(order.begin(), order.end()));
  return {classes.begin(), classes.end()};
}

Pattern from_orbit(const std::vector<Rational>& points) {
  const int n = static_cast<int>(points.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return points[a] < points[b]; });
  for (int i = 1; i < n; ++i) {
    if (points[idx[i]] == points[idx[i - 1]]) {
      throw DuplicatePoint("orbit repeats the point " + to_string(points[idx[i]]));
    }
  }
  std::vector<int> rank(n);
  for (int r = 0; r < n; ++r) rank[idx[r]] = r;
  std::vector<int> sigma(n);
  for (int t = 0; t < n; ++t) sigma[rank[t]] = rank[(t + 1) % n];
  return Pattern(std::move(sigma));
}

TypeTag TypeTag::two_param(int m, int n) { return {Kind::TwoParam, std::min(m, n), std::max(m, n)}; }

int TypeTag::period() const {
  switch (kind) {
    case Kind::Monotone:
    case Kind::Stefan:
      return a;
    case Kind::TwoParam:
      return a + b;
  }
  return 0;
}

std::string to_string(const TypeTag& t) {
  switch (t.kind) {
    case TypeTag::Kind::Monotone:
      return "Monotone(" + std::to_string(t.a) + ")";
    case TypeTag::Kind::Stefan:
      return "Stefan(" + std::to_string(t.a) + ")";
    case TypeTag::Kind::TwoParam:
      return "TwoParam(" + std::to_string(t.a) + "," + std::to_string(t.b) + ")";
  }
  return {};
}

Pattern monotone_template(int n) {
  std::vector<int> s(n);
  for (int r = 0; r < n; ++r) s[r] = (r + 1) % n;
  return Pattern(std::move(s));
}

Pattern stefan_template(int q) {
  if (q < 3 || q % 2 == 0) throw InvalidInput("Stefan period must be odd and at least 3");
  const int n = (q - 1) / 2;
  std::vector<int> s(q);
  s[0] = n;
  for (int j = 1; j <= n - 1; ++j) s[j] = 2 * n + 1 - j;
  s[n] = n + 1;
  for (int k = 1; k <= n - 1; ++k) s[n + k] = n - k;
  s[2 * n] = 0;
  return Pattern(std::move(s));
}

Pattern two_param_template(int m, int n) {
  if (m < 1 || n < 1) throw InvalidInput("two-parameter template needs m, n >= 1");
  std::vector<int> s(m + n);
  s[0] = m;
  for (int r = 1; r <= m - 1; ++r) s[r] = r - 1;
  for (int t = 0; t <= n - 2; ++t) s[m + t] = m + t + 1;
  s[m + n - 1] = m - 1;
  return Pattern(std::move(s));
}

Pattern template_of(const TypeTag& t) {
  switch (t.kind) {
    case TypeTag::Kind::Monotone:
      return monotone_template(t.a);
    case TypeTag::Kind::Stefan:
      return stefan_template(t.a);
    case TypeTag::Kind::TwoParam:
      return two_param_template(t.a, t.b);
  }
  throw InvalidInput("unknown type tag");
}

int anchor_rank(const TypeTag& t) {
  switch (t.kind) {
    case TypeTag::Kind::Monotone:
      return 0;
    case TypeTag::Kind::Stefan:
      return (t.a - 1) / 2;
    case TypeTag::Kind::TwoParam:
      return t.a;
  }
  return 0;
}

bool matches_directly(const Pattern& p, const TypeTag& t) {
  return t.period() == p.period() && template_of(t) == p;
}

std::vector<TypeTag> classify(const Pattern& p) {
  const int n = p.period();
  const Pattern m = mirror(p);
  std::vector<TypeTag> tags;
  auto matches = [&](const Pattern& tmpl) { return tmpl == p || tmpl == m; };
  if (matches(monotone_template(n))) tags.push_back(TypeTag::monotone(n));
  if (n >= 3 && n % 2 == 1 && matches(stefan_template(n))) tags.push_back(TypeTag::stefan(n));
  for (int a = 1; a <= n - 1; ++a) {
    if (a > n - a) break;
    // mirror(template(a, b)) == template(b, a), so one orientation suffices.
    if (matches(two_param_template(a, n - a))) tags.push_back(TypeTag::two_param(a, n - a));
  }
  std::sort(tags.begin(), tags.end());
  return tags;
}

}  // namespace orbitforge
