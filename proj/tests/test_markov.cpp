#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbitforge/errors.hpp"
#include "orbitforge/markov.hpp"

using namespace orbitforge;

namespace {

using Edges = std::vector<std::pair<int, int>>;
using Matrix = std::vector<std::vector<long long>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

// Primitive closed walks counted through traces of adjacency powers.
std::set<int> trace_oracle(const MarkovGraph& g, int max_n) {
  const int v = g.vertices;
  Matrix a(v, std::vector<long long>(v, 0));
  for (auto [r, s] : g.edges()) a[r][s] = 1;
  std::vector<long long> trace(max_n + 1, 0);
  Matrix power = a;
  for (int n = 1; n <= max_n; ++n) {
    for (int i = 0; i < v; ++i) trace[n] += power[i][i];
    power = multiply(power, a);
  }
  std::set<int> out;
  for (int n = 1; n <= max_n; ++n) {
    long long primitive = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) primitive += mobius(d) * trace[n / d];
    }
    if (primitive > 0) out.insert(n);
  }
  return out;
}

std::set<int> range(int lo, int hi) {
  std::set<int> out;
  for (int i = lo; i <= hi; ++i) out.insert(i);
  return out;
}

}  // namespace

TEST_CASE("covering_graph") {
  CHECK(covering_graph(Pattern({1, 2, 0})).edges() == Edges{{0, 1}, {1, 0}, {1, 1}});
  CHECK(covering_graph(Pattern({1, 2, 3, 0})).edges() == Edges{{0, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
  CHECK(covering_graph(Pattern({1, 0})).edges() == Edges{{0, 0}});
  CHECK(covering_graph(Pattern({1, 0})).vertices == 1);
}

TEST_CASE("covering_graph matches interval spans") {
  for (int n = 2; n <= 7; ++n) {
    for (const auto& p : enumerate(n)) {
      const auto g = covering_graph(p);
      REQUIRE(g.vertices == n - 1);
      for (int r = 0; r < n - 1; ++r) {
        const int lo = std::min(p.sigma()[r], p.sigma()[r + 1]);
        const int hi = std::max(p.sigma()[r], p.sigma()[r + 1]);
        for (int s = 0; s < n - 1; ++s) CHECK(g.has_edge(r, s) == (lo <= s && s + 1 <= hi));
      }
    }
  }
}

TEST_CASE("loop_periods") {
  CHECK(loop_periods(covering_graph(Pattern({1, 2, 0})), 8) == range(1, 8));
  CHECK(loop_periods(covering_graph(Pattern({1, 0})), 8) == std::set<int>{1});
  CHECK(loop_periods(covering_graph(Pattern({2, 3, 1, 0})), 3) == std::set<int>{1, 2});
}

TEST_CASE("loop_periods agrees with the trace count") {
  for (int n = 2; n <= 7; ++n) {
    for (const auto& p : enumerate(n)) {
      const auto g = covering_graph(p);
      CHECK_MESSAGE(loop_periods(g, 9) == trace_oracle(g, 9), to_string(p));
    }
  }
}

TEST_CASE("loop_periods cap") {
  SearchLimits tight;
  tight.loop_state_cap = 10;
  CHECK_THROWS_AS(loop_periods(covering_graph(Pattern({1, 2, 0})), 9, tight), CapExceeded);
}

TEST_CASE("forced_periods") {
  CHECK(forced_periods(Pattern({1, 2, 0}), 8) == range(1, 8));
  CHECK(forced_periods(Pattern({2, 3, 1, 0}), 8) == std::set<int>{1, 2, 4});
  CHECK(forced_periods(Pattern({2, 4, 3, 1, 0}), 9) == std::set<int>{1, 2, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("loops are realized and own period is forced") {
  for (int n = 2; n <= 7; ++n) {
    for (const auto& p : enumerate(n)) {
      const auto forced = forced_periods(p, 9);
      for (int q : loop_periods(covering_graph(p), 9)) CHECK_MESSAGE(forced.count(q), to_string(p) << " " << q);
      CHECK(forced.count(n));
    }
  }
}

TEST_CASE("dot output") {
  const std::string dot = to_dot(covering_graph(Pattern({1, 2, 0})), "g");
  CHECK(dot.rfind("digraph g {", 0) == 0);
  CHECK(dot.find("I0 -> I1;") != std::string::npos);
  CHECK(dot.find("I1 -> I0;") != std::string::npos);
  CHECK(dot.find("I1 -> I1;") != std::string::npos);
  CHECK(dot.find("I0 -> I0;") == std::string::npos);
}
