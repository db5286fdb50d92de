#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbitforge/errors.hpp"
#include "orbitforge/properties.hpp"

#include <set>

using namespace orbitforge;

namespace {

Rational Q(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

const PLMap three_cycle = connect_the_dots(Pattern({1, 2, 0}));
const PLMap tent = parse_map("0:0,1/2:1,1:0");
const PLMap identity = parse_map("0:0,1:1");

using D = PropertyDescriptor;

PropertyConfig small_config() {
  PropertyConfig cfg;
  cfg.powers = {1, 2};
  cfg.max_period = 7;
  cfg.max_two_param = 3;
  cfg.max_prefix = 3;
  return cfg;
}

std::vector<PLMap> corpus(int max_period) {
  std::vector<PLMap> out{tent, identity};
  for (int n = 2; n <= max_period; ++n) {
    for (const auto& p : enumerate(n)) out.push_back(connect_the_dots(p));
  }
  return out;
}

// Independent depth-limited search for a strictly decreasing backward orbit of
// z inside (z, ...): at each step try every preimage of the current point in
// (z, current), largest first.
bool constructive_chain(const PLMap& g, const Rational& z, const Rational& cur, int depth, long& budget) {
  if (depth == 0) return true;
  if (--budget < 0) return false;
  std::vector<Rational> options;
  for (const auto& comp : preimages(g, cur)) {
    Interval open_gap{z, cur, true, true};
    Interval part = comp.intersect(open_gap);
    if (!part.empty()) options.push_back(part.degenerate() ? part.lo : part.hi_open ? part.midpoint() : part.hi);
  }
  std::sort(options.rbegin(), options.rend());
  for (const auto& x : options) {
    if (constructive_chain(g, z, x, depth - 1, budget)) return true;
  }
  return false;
}

bool constructive_right(const PLMap& g, const Rational& z, int depth) {
  long budget = 20000;
  for (const auto& comp : preimages(g, z)) {
    if (comp.hi <= z) continue;
    const Rational w = comp.lo > z ? comp.lo : comp.hi;
    if (constructive_chain(g, z, w, depth - 1, budget)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("descriptor text forms") {
  CHECK(to_string(D::period(5)) == "P(5)");
  CHECK(to_string(D::monotone(2, kInfinity)) == "L(k=2,n=inf)");
  CHECK(to_string(D::stefan(1, 5)) == "S(k=1,q=5)");
  CHECK(to_string(D::two_param(2, 3, 2)) == "L2(k=2,m=2,n=3)");
  CHECK(to_string(D::two_param(1, 2, kInfinity)) == "L2(k=1,m=2,n=inf)");
  CHECK(to_string(D::two_param(1, kInfinity, kInfinity)) == "L2(k=1,m=inf,n=inf)");
  for (const char* s : {"P(5)", "L(k=2,n=inf)", "S(k=1,q=5)", "L2(k=2,m=2,n=3)", "L2(k=1,m=2,n=inf)",
                        "L(k=4,n=1)", "L2(k=1,m=inf,n=inf)"}) {
    CHECK(to_string(parse_descriptor(s)) == s);
  }
  CHECK(parse_descriptor("L2(k=1, m=3, n=2)") == D::two_param(1, 2, 3));
  CHECK_THROWS_AS(parse_descriptor("S(k=1,q=4)"), InvalidInput);
  CHECK_THROWS_AS(parse_descriptor("P(0)"), InvalidInput);
  CHECK_THROWS_AS(parse_descriptor("Q(3)"), InvalidInput);
  CHECK_THROWS_AS(parse_descriptor("L(k=1)"), InvalidInput);
  CHECK_THROWS_AS(parse_descriptor("L(k=1,n=2,q=3)"), InvalidInput);
  CHECK_THROWS_AS(parse_descriptor("L(k=x,n=2)"), InvalidInput);
}

TEST_CASE("decide_tail") {
  const PLMap g = iterate(three_cycle, 2);
  auto cert = decide_tail(g, Q(4, 3), Side::Right);
  REQUIRE(cert);
  CHECK(cert->limit == Q(4, 3));
  CHECK(cert->anchor == Q(11, 6));

  CHECK_FALSE(decide_tail(three_cycle, Q(4, 3), Side::Right));
  CHECK_FALSE(decide_tail(three_cycle, Q(4, 3), Side::Left));

  auto t = decide_tail(tent, Q(0), Side::Right);
  REQUIRE(t);
  CHECK(t->limit == Q(0));
  CHECK(t->anchor == Q(1));
  CHECK_FALSE(decide_tail(tent, Q(2, 3), Side::Right));

  CHECK_THROWS_AS(decide_tail(g, Q(1), Side::Right), NotAFixedPoint);
  CHECK_FALSE(decide_tail(identity, Q(1, 2), Side::Right));
}

TEST_CASE("decide_tail left side mirrors right side") {
  for (const auto& f : corpus(5)) {
    const PLMap m = mirror_conjugate(f);
    for (const auto& z : fixed_point_candidates(f)) {
      auto left = decide_tail(f, z, Side::Left);
      auto right = decide_tail(m, reflect(f, z), Side::Right);
      REQUIRE(left.has_value() == right.has_value());
      if (left) {
        CHECK(left->limit == reflect(f, right->limit));
        CHECK(left->anchor == reflect(f, right->anchor));
      }
    }
  }
}

TEST_CASE("tail_reach") {
  CHECK(tail_reach(tent, Q(0)) == Q(1));
  CHECK_FALSE(tail_reach(three_cycle, Q(4, 3)));
  CHECK(tail_reach(iterate(three_cycle, 2), Q(4, 3)) == Q(2));
}

TEST_CASE("extend_chain follows exact preimages") {
  const PLMap g = iterate(three_cycle, 2);
  auto chain = extend_chain(g, Q(4, 3), Q(11, 6), 2);
  REQUIRE(chain.size() == 2);
  CHECK(chain[0] == Q(35, 24));
  CHECK(chain[1] == Q(131, 96));
  CHECK(g(chain[0]) == Q(11, 6));
  CHECK(g(chain[1]) == chain[0]);
}

TEST_CASE("check: examples") {
  CHECK(check(three_cycle, D::monotone(1, kInfinity)).fails());

  auto s = check(three_cycle, D::monotone(2, kInfinity));
  REQUIRE(s.holds());
  const auto& w = std::get<BackwardChainWitness>(*s.witness);
  CHECK(w.z == Q(4, 3));
  CHECK(w.anchor == Q(11, 6));
  REQUIRE(w.chain.size() >= 3);
  CHECK(w.chain[0] == Q(11, 6));
  CHECK(w.chain[1] == Q(35, 24));
  CHECK(w.chain[2] == Q(131, 96));
  CHECK(w.certified);

  CHECK(check(tent, D::two_param(1, kInfinity, kInfinity)).fails());
  auto t = check(tent, D::monotone(1, kInfinity));
  REQUIRE(t.holds());
  const auto& tw = std::get<BackwardChainWitness>(*t.witness);
  CHECK(tw.z == Q(0));
  CHECK(tw.limit == Q(0));
  CHECK(tw.anchor == Q(1));

  CHECK(check(connect_the_dots(stefan_template(5)), D::period(3)).fails());
  CHECK(check(three_cycle, D::period(7)).holds());
}

TEST_CASE("check_all: examples") {
  for (const auto& [d, s] : check_all(three_cycle)) {
    if (d.family == D::Family::P) CHECK_MESSAGE(s.holds(), to_string(d));
  }

  for (const auto& [d, s] : check_all(identity)) {
    const bool expected = (d.family == D::Family::P && d.a == 1) || (d.family == D::Family::L && d.a == 1);
    CHECK_MESSAGE(s.holds() == expected, to_string(d));
    CHECK_MESSAGE(s.verdict != Verdict::Unknown, to_string(d));
  }

  const PLMap f = connect_the_dots(Pattern({2, 0, 3, 1}));
  auto s = check(f, D::two_param(1, 2, 2));
  REQUIRE(s.holds());
  const auto& orbit = std::get<FiniteOrbit>(*s.witness);
  CHECK(orbit.points == std::vector<Rational>{Q(2), Q(3), Q(1), Q(0)});
}

TEST_CASE("grid ordering is deterministic and sized by the config") {
  auto grid = property_grid();
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::set<D>(grid.begin(), grid.end()).size() == grid.size());
  // 9 P cells, then per power: 10 L, 4 S, 10 L2 finite, 6 prefixed, 1 two-sided
  CHECK(grid.size() == 9 + 3 * (10 + 4 + 10 + 6 + 1));
}

TEST_CASE("prefixed chains") {
  const PLMap f = connect_the_dots(Pattern({2, 0, 3, 1}));
  auto s = check(f, D::two_param(1, 2, kInfinity));
  REQUIRE(s.holds());
  const auto& w = std::get<BackwardChainWitness>(*s.witness);
  CHECK(w.prefix_length == 2);
  CHECK(verify_witness(f, D::two_param(1, 2, kInfinity), *s.witness));
  CHECK(check(identity, D::two_param(1, 1, kInfinity)).fails());

  PropertyConfig cfg;
  cfg.max_prefix = 2;
  CHECK(check(f, D::two_param(1, 3, kInfinity), cfg).verdict == Verdict::Unknown);
}

TEST_CASE("caps surface as unknown") {
  PropertyConfig cfg;
  cfg.limits.branch_cap = 3;
  auto s = check(connect_the_dots(stefan_template(5)), D::period(9), cfg);
  CHECK(s.verdict == Verdict::Unknown);
  CHECK_FALSE(s.reason.empty());
}

TEST_CASE("corpus: witnesses re-verify, mirror invariance, monotonicity") {
  const PropertyConfig cfg = small_config();
  for (const auto& f : corpus(6)) {
    const auto report = check_all(f, cfg);
    const auto mirrored = check_all(mirror_conjugate(f), cfg);
    REQUIRE(report.size() == mirrored.size());
    std::map<D, Verdict> verdict;
    for (std::size_t i = 0; i < report.size(); ++i) {
      const auto& [d, s] = report[i];
      verdict[d] = s.verdict;
      CHECK_MESSAGE(s.verdict != Verdict::Unknown, to_string(f) << " " << to_string(d));
      CHECK_MESSAGE(s.verdict == mirrored[i].second.verdict, to_string(f) << " " << to_string(d));
      if (s.holds()) CHECK_MESSAGE(verify_witness(f, d, *s.witness), to_string(f) << " " << to_string(d));
    }
    for (int k : cfg.powers) {
      for (int n = 1; n < cfg.max_period; ++n) {
        if (verdict[D::monotone(k, n + 1)] == Verdict::Holds) CHECK(verdict[D::monotone(k, n)] == Verdict::Holds);
      }
      if (verdict[D::monotone(k, kInfinity)] == Verdict::Holds) {
        for (int n = 1; n <= 6; ++n) CHECK(verdict[D::monotone(k, n)] == Verdict::Holds);
      }
    }
  }
}

TEST_CASE("corpus: infinite verdicts agree with constructive search") {
  int agreed = 0;
  for (const auto& f : corpus(6)) {
    for (int k : {1, 2}) {
      const PLMap g = iterate(f, k);
      const auto s = check(f, D::monotone(k, kInfinity));
      if (s.holds()) {
        const auto& w = std::get<BackwardChainWitness>(*s.witness);
        const PLMap& side_map = w.side == Side::Right ? g : mirror_conjugate(g);
        const Rational limit = w.side == Side::Right ? w.limit : reflect(g, w.limit);
        const Rational anchor = w.side == Side::Right ? w.anchor : reflect(g, w.anchor);
        auto chain = extend_chain(side_map, limit, anchor, 63);
        Rational prev = anchor;
        for (const auto& x : chain) {
          CHECK(side_map(x) == prev);
          CHECK(x < prev);
          CHECK(x > limit);
          prev = x;
        }
      }
      bool constructive = false;
      const PLMap m = mirror_conjugate(g);
      for (const auto& z : fixed_point_candidates(g)) {
        if (constructive_right(g, z, 64) || constructive_right(m, reflect(g, z), 64)) constructive = true;
      }
      if (constructive) CHECK_MESSAGE(s.holds(), to_string(f) << " k=" << k);
      if (constructive) ++agreed;
    }
  }
  MESSAGE("constructive chains found: " << agreed);
  CHECK(agreed > 0);
}
