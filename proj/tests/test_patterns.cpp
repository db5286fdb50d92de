#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbitforge/errors.hpp"
#include "orbitforge/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace orbitforge;

namespace {

Pattern P(std::vector<int> s) { return Pattern(std::move(s)); }

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Brute force: every permutation of {0..n-1}, keep single cycles, pair with
// mirrors. Independent of enumerate()'s cycle construction.
std::set<std::vector<int>> brute_force_classes(int n) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  std::set<std::vector<int>> reps;
  do {
    int r = 0, len = 0;
    do {
      r = s[r];
      ++len;
    } while (r != 0);
    if (len != n) continue;
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = (n - 1) - s[(n - 1) - i];
    reps.insert(std::min(s, m));
  } while (std::next_permutation(s.begin(), s.end()));
  return reps;
}

}  // namespace

TEST_CASE("pattern validation") {
  CHECK_THROWS_AS(P({0}), InvalidInput);
  CHECK_THROWS_AS(P({1, 0, 2}), InvalidInput);  // 2 is fixed
  CHECK_THROWS_AS(P({1, 1, 0}), InvalidInput);
  CHECK_THROWS_AS(parse_pattern("1,,0"), InvalidInput);
  CHECK(parse_pattern(" 2, 0,3,1 ") == P({2, 0, 3, 1}));
  CHECK(to_string(P({2, 0, 3, 1})) == "2,0,3,1");
}

TEST_CASE("mirror") {
  CHECK(mirror(P({1, 2, 0})) == P({2, 0, 1}));
  CHECK(mirror(P({2, 0, 3, 1})) == P({2, 0, 3, 1}));
  CHECK(mirror(mirror(P({1, 3, 0, 2}))) == P({1, 3, 0, 2}));
}

TEST_CASE("canonical") {
  CHECK(canonical(P({2, 0, 1})) == P({1, 2, 0}));
  CHECK(canonical(P({3, 0, 1, 2})) == P({1, 2, 3, 0}));
  CHECK(canonical(P({2, 0, 3, 1})) == P({2, 0, 3, 1}));
}

TEST_CASE("symmetry properties up to period 8") {
  for (int n = 2; n <= 8; ++n) {
    for (const Pattern& p : enumerate(n)) {
      const Pattern m = mirror(p);
      CHECK(mirror(m) == p);
      CHECK(canonical(canonical(m)) == canonical(m));
      CHECK(canonical(m) == canonical(p));
      CHECK(classify(p) == classify(m));
    }
  }
}

TEST_CASE("enumerate matches brute force") {
  CHECK(enumerate(3) == std::vector<Pattern>{P({1, 2, 0})});
  CHECK(enumerate(4) ==
        std::vector<Pattern>{P({1, 2, 3, 0}), P({1, 3, 0, 2}), P({2, 0, 3, 1}), P({2, 3, 1, 0})});
  CHECK(enumerate(5).size() == 12);
  for (int n = 2; n <= 8; ++n) {
    const auto got = enumerate(n);
    const auto expect = brute_force_classes(n);
    REQUIRE(got.size() == expect.size());
    std::set<std::vector<int>> seen;
    for (const auto& p : got) {
      CHECK(canonical(p) == p);
      seen.insert(p.sigma());
    }
    CHECK(seen == expect);
    CHECK(static_cast<long>(got.size()) * 2 >= factorial(n - 1));
  }
  CHECK_THROWS_AS(enumerate(1), InvalidInput);
  CHECK_THROWS_AS(enumerate(11), CapExceeded);
}

TEST_CASE("from_orbit") {
  CHECK(from_orbit({2, 3, 1, 0}) == P({2, 0, 3, 1}));
  CHECK(from_orbit({Rational(1, 2), Rational(17, 10), Rational(1, 10)}) == P({1, 2, 0}));
  CHECK_THROWS_AS(from_orbit({0, 1, 0}), DuplicatePoint);
}

TEST_CASE("templates") {
  CHECK(stefan_template(5) == P({2, 4, 3, 1, 0}));
  CHECK(two_param_template(2, 2) == P({2, 0, 3, 1}));
  CHECK(two_param_template(1, 2) == P({1, 2, 0}));
  CHECK(mirror(two_param_template(3, 2)) == two_param_template(2, 3));
  // Stefan(2n+1) read off x_{2n} < ... < x_2 < x_0 < x_1 < ... < x_{2n-1}
  for (int q = 3; q <= 11; q += 2) {
    const int n = (q - 1) / 2;
    std::vector<Rational> pts(q);
    for (int i = 0; i < q; ++i) pts[i] = i % 2 ? Rational(n + (i + 1) / 2) : Rational(n - i / 2);
    CHECK(from_orbit(pts) == stefan_template(q));
  }
}

TEST_CASE("classify") {
  using K = TypeTag;
  CHECK(classify(P({1, 2, 0})) == std::vector<TypeTag>{K::monotone(3), K::stefan(3), K::two_param(1, 2)});
  CHECK(classify(P({2, 4, 3, 1, 0})) == std::vector<TypeTag>{K::stefan(5)});
  CHECK(classify(P({2, 0, 3, 1})) == std::vector<TypeTag>{K::two_param(2, 2)});
  CHECK(classify(P({2, 3, 1, 0})).empty());
}

TEST_CASE("templates round-trip through classify up to period 12") {
  for (int n = 2; n <= 12; ++n) {
    auto has = [](const std::vector<TypeTag>& tags, const TypeTag& t) {
      return std::find(tags.begin(), tags.end(), t) != tags.end();
    };
    CHECK(has(classify(monotone_template(n)), TypeTag::monotone(n)));
    if (n >= 3 && n % 2) CHECK(has(classify(stefan_template(n)), TypeTag::stefan(n)));
    for (int m = 1; m < n; ++m) {
      const TypeTag t = TypeTag::two_param(m, n - m);
      CHECK(has(classify(two_param_template(m, n - m)), t));
      CHECK(has(classify(template_of(t)), t));
    }
  }
}
