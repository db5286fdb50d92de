#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbitforge/errors.hpp"
#include "orbitforge/orbit_search.hpp"
#include "orbitforge/plmap.hpp"

#include <numeric>
#include <random>

using namespace orbitforge;

namespace {

Rational Q(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

const PLMap three_cycle = connect_the_dots(Pattern({1, 2, 0}));
const PLMap tent = parse_map("0:0,1/2:1,1:0");

Rational random_point(const PLMap& f, std::mt19937& rng) {
  std::uniform_int_distribution<long> den(1, 997);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(0, q);
  Rational t(num(rng), q);
  t.canonicalize();
  return f.lo() + t * (f.hi() - f.lo());
}

std::vector<Rational> points_of(const PointSet& s) {
  std::vector<Rational> out;
  for (const auto& iv : s) {
    REQUIRE(iv.degenerate());
    out.push_back(iv.lo);
  }
  return out;
}

}  // namespace

TEST_CASE("map parsing and validation") {
  CHECK(to_string(parse_map(" 0:0, 1/2:1 ,1:0")) == "0:0,1/2:1,1:0");
  CHECK_THROWS_AS(parse_map("0:0,0:1"), InvalidInput);
  CHECK_THROWS_AS(parse_map("0:0,1:2"), InvalidInput);
  CHECK_THROWS_AS(parse_map("0:0"), InvalidInput);
  CHECK_THROWS_AS(parse_map("0:0,1/0:1"), InvalidInput);
  CHECK_THROWS_AS(parse_map("0-0,1:1"), InvalidInput);
}

TEST_CASE("connect_the_dots") {
  const PLMap f = connect_the_dots(Pattern({2, 0, 3, 1}));
  CHECK(to_string(f) == "0:2,1:0,2:3,3:1");
  CHECK(to_string(three_cycle) == "0:1,1:2,2:0");
  for (int n = 2; n <= 7; ++n) {
    for (const Pattern& p : enumerate(n)) {
      const PLMap g = connect_the_dots(p);
      const FiniteOrbit grid = orbit_of(g, 0, n);
      CHECK(is_orbit(g, grid));
      CHECK(from_orbit(grid.points) == p);
    }
  }
}

TEST_CASE("eval") {
  CHECK(eval(three_cycle, Q(4, 3)) == Q(4, 3));
  CHECK(eval(three_cycle, Q(1, 3)) == Q(4, 3));
  CHECK(eval(three_cycle, Q(1)) == Q(2));
  CHECK_THROWS_AS(eval(three_cycle, Q(5, 2)), OutOfDomain);
  CHECK_THROWS_AS(eval(three_cycle, Q(-1, 2)), OutOfDomain);
}

TEST_CASE("iterate") {
  const PLMap g = iterate(three_cycle, 2);
  CHECK(to_string(g) == "0:2,1:0,3/2:2,2:1");
  REQUIRE(g.pieces().size() == 3);
  CHECK(g.pieces()[0].map == Affine{-2, 2});
  CHECK(g.pieces()[1].map == Affine{4, -4});
  CHECK(g.pieces()[2].map == Affine{-2, 5});
  CHECK(eval(g, Q(7, 5)) == Q(8, 5));
  CHECK(eval(three_cycle, eval(three_cycle, Q(7, 5))) == Q(8, 5));
  CHECK(to_string(iterate(three_cycle, 1)) == to_string(three_cycle));
  CHECK_THROWS_AS(iterate(connect_the_dots(Pattern({2, 4, 3, 1, 0})), 3, 4), CapExceeded);
}

TEST_CASE("iterate agrees with repeated evaluation") {
  std::mt19937 rng(20261016);
  std::vector<PLMap> corpus{tent, parse_map("0:0,1:1")};
  for (int n = 2; n <= 6; ++n) {
    for (const Pattern& p : enumerate(n)) corpus.push_back(connect_the_dots(p));
  }
  for (const PLMap& f : corpus) {
    for (int k = 2; k <= 4; ++k) {
      const PLMap fk = iterate(f, k);
      for (int t = 0; t < 100; ++t) {
        const Rational x = random_point(f, rng);
        Rational y = x;
        for (int i = 0; i < k; ++i) y = f(y);
        REQUIRE(fk(x) == y);
      }
    }
  }
}

TEST_CASE("fixed_sets") {
  auto fs = fixed_sets(three_cycle);
  CHECK(points_of(fs) == std::vector<Rational>{Q(4, 3)});
  fs = fixed_sets(parse_map("0:0,1:1"));
  REQUIRE(fs.size() == 1);
  CHECK(fs[0] == Interval::closed(0, 1));
  fs = fixed_sets(iterate(connect_the_dots(Pattern({1, 0})), 2));
  REQUIRE(fs.size() == 1);
  CHECK(fs[0] == Interval::closed(0, 1));
  // every reported point is fixed, checked at ends and midpoints
  for (int n = 2; n <= 6; ++n) {
    for (const Pattern& p : enumerate(n)) {
      const PLMap g = iterate(connect_the_dots(p), 2);
      for (const auto& iv : fixed_sets(g)) {
        CHECK(g(iv.lo) == iv.lo);
        CHECK(g(iv.hi) == iv.hi);
        CHECK(g(iv.midpoint()) == iv.midpoint());
      }
    }
  }
}

TEST_CASE("preimages") {
  CHECK(points_of(preimages(three_cycle, Q(4, 3))) == std::vector<Rational>{Q(1, 3), Q(4, 3)});
  CHECK(points_of(preimages(tent, 1)) == std::vector<Rational>{Q(1, 2)});
  auto pre = preimages(parse_map("0:1,1:1,2:0"), 1);
  REQUIRE(pre.size() == 1);
  CHECK(pre[0] == Interval::closed(0, 1));
}

TEST_CASE("mirror conjugate") {
  const PLMap m = mirror_conjugate(three_cycle);
  CHECK(to_string(m) == "0:2,1:0,2:1");
  CHECK(to_string(mirror_conjugate(m)) == to_string(three_cycle));
}

TEST_CASE("periodic_orbits") {
  auto orbits = periodic_orbits(three_cycle, 2);
  REQUIRE(orbits.size() == 1);
  CHECK(std::get<FiniteOrbit>(orbits[0]).points == std::vector<Rational>{Q(2, 3), Q(5, 3)});

  orbits = periodic_orbits(connect_the_dots(Pattern({1, 0})), 2);
  REQUIRE(orbits.size() == 1);
  const auto& fam = std::get<OrbitFamily>(orbits[0]);
  CHECK(fam.leftmost == Interval{0, Q(1, 2), false, true});
  CHECK(fam.representative.points == std::vector<Rational>{Q(1, 4), Q(3, 4)});

  CHECK(periodic_orbits(connect_the_dots(Pattern({2, 4, 3, 1, 0})), 3).empty());

  orbits = periodic_orbits(parse_map("0:0,1:1"), 1);
  REQUIRE(orbits.size() == 1);
  CHECK(std::holds_alternative<OrbitFamily>(orbits[0]));
  CHECK(periodic_orbits(parse_map("0:0,1:1"), 2).empty());
}

TEST_CASE("periodic orbits contain the grid orbit and are exact") {
  for (int n = 2; n <= 7; ++n) {
    for (const Pattern& p : enumerate(n)) {
      const PLMap f = connect_the_dots(p);
      const FiniteOrbit grid = rotate_to_leftmost(orbit_of(f, 0, n));
      bool found = false;
      for (const auto& o : periodic_orbits(f, n)) {
        const FiniteOrbit& rep = representative(o);
        found = found || rep == grid;
        if (const auto* fam = std::get_if<OrbitFamily>(&o)) {
          found = found || (fam->leftmost.contains(grid.points[0]) && from_orbit(rep.points) == p);
        }
        REQUIRE(is_orbit(f, rep));
        REQUIRE(rep.period() == n);
      }
      CHECK(found);
    }
  }
  // least period is exact for every period up to 6 on the period-5 classes
  for (const Pattern& p : enumerate(5)) {
    const PLMap f = connect_the_dots(p);
    for (int m = 1; m <= 6; ++m) {
      for (const auto& o : periodic_orbits(f, m)) {
        const FiniteOrbit& rep = representative(o);
        Rational x = rep.points[0];
        for (int d = 1; d < m; ++d) {
          x = f(x);
          CHECK(x != rep.points[0]);
        }
        CHECK(f(x) == rep.points[0]);
      }
    }
  }
}

TEST_CASE("targeted and first-hit searches agree with full enumeration") {
  for (const Pattern& p : enumerate(5)) {
    const PLMap f = connect_the_dots(p);
    for (int m = 1; m <= 7; ++m) {
      const bool any = !periodic_orbits(f, m).empty();
      CHECK(find_periodic_orbit(f, m).has_value() == any);
    }
    auto hit = find_orbit_with_pattern(f, p);
    REQUIRE(hit);
    CHECK(from_orbit(hit->points) == p);
  }
  CHECK_FALSE(find_orbit_with_pattern(three_cycle, Pattern({1, 0})).has_value() == false);
  SearchLimits tiny;
  tiny.branch_cap = 5;
  CHECK_THROWS_AS(find_periodic_orbit(connect_the_dots(Pattern({1, 2, 0})), 9, tiny), CapExceeded);
}

TEST_CASE("itinerary solutions") {
  const Interval I0 = Interval::closed(0, 1), I1 = Interval::closed(1, 2);
  CHECK(itinerary_solutions(three_cycle, {I1}) == std::vector<Rational>{Q(4, 3)});
  CHECK(itinerary_solutions(three_cycle, {I1, I0}) == std::vector<Rational>{Q(5, 3)});
  CHECK(itinerary_solutions(three_cycle, {I1, I1, I0}).front() == Q(1));
}
