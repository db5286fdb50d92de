#include "orbitforge/verify.hpp"

#include "orbitforge/errors.hpp"
#include "orbitforge/markov.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace orbitforge {

namespace {

// n = 2^s * q with q odd
std::pair<int, int> split_two(int n) {
  int s = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++s;
  }
  return {s, n};
}

}  // namespace

Order sharkovskii_cmp(int a, int b) {
  if (a < 1 || b < 1) throw InvalidInput("Sharkovskii order is defined on positive integers");
  if (a == b) return Order::Equal;
  const auto [s, q] = split_two(a);
  const auto [t, r] = split_two(b);
  bool before;
  if (q > 1 && r > 1) {
    before = s < t || (s == t && q < r);
  } else if (q > 1 || r > 1) {
    before = q > 1;
  } else {
    before = s > t;
  }
  return before ? Order::Precedes : Order::Follows;
}

std::string to_string(Order o) {
  switch (o) {
    case Order::Precedes:
      return "precedes";
    case Order::Equal:
      return "equal";
    case Order::Follows:
      return "follows";
  }
  return {};
}

std::string to_string(const Arrow& a) {
  return to_string(a.from) + " -> " + to_string(a.to) + " [" + a.source + "]";
}

bool in_grid(const PropertyDescriptor& d, const PropertyConfig& cfg) {
  using F = PropertyDescriptor::Family;
  if (d.family == F::P) return d.a <= cfg.max_period;
  if (std::find(cfg.powers.begin(), cfg.powers.end(), d.k) == cfg.powers.end()) return false;
  switch (d.family) {
    case F::L:
    case F::S:
      return d.a == kInfinity || d.a <= cfg.max_period;
    case F::L2:
      if (d.a == kInfinity) return true;
      if (d.b == kInfinity) return d.a <= cfg.max_prefix;
      return d.a + d.b <= cfg.max_period;
    case F::P:
      break;
  }
  return false;
}

std::vector<Arrow> arrow_table(const VerifyConfig& cfg) {
  using D = PropertyDescriptor;
  const PropertyConfig& pc = cfg.properties;
  const int top = pc.max_period;
  std::vector<Arrow> out;
  auto add = [&](const D& from, const D& to, const char* source) {
    if (from != to && in_grid(from, pc) && in_grid(to, pc)) out.push_back({from, to, source});
  };
  auto both = [&](const D& a, const D& b) {
    add(a, b, "equivalence");
    add(b, a, "equivalence");
  };

  for (int a = 1; a <= top; ++a) {
    for (int b = 1; b <= top; ++b) {
      if (sharkovskii_cmp(a, b) == Order::Precedes) add(D::period(a), D::period(b), "sharkovskii");
    }
  }

  for (int k : pc.powers) {
    for (int n = 1; n <= top; ++n) {
      add(D::monotone(k, kInfinity), D::monotone(k, n), "monotone-chain");
      if (n + 1 <= top) add(D::monotone(k, n + 1), D::monotone(k, n), "monotone-chain");
    }
    for (int q = 3; q + 2 <= top; q += 2) add(D::stefan(k, q), D::stefan(k, q + 2), "stefan-chain");

    for (int m = cfg.min_mn; m <= cfg.max_mn; ++m) {
      for (int n = cfg.min_mn; n <= cfg.max_mn; ++n) {
        const D base = D::two_param(k, m, n);
        add(base, D::two_param(k, m, n + 1), "two-param-extend");
        add(base, D::two_param(k, m + 1, n), "two-param-extend");
        add(base, D::two_param(k, m, kInfinity), "backward-chain");
      }
      add(D::two_param(k, m, kInfinity), D::two_param(k, m + 1, kInfinity), "backward-chain");
      add(D::two_param(k, m + 1, kInfinity), D::two_param(k, kInfinity, kInfinity), "backward-chain");
    }
    add(D::two_param(k, kInfinity, kInfinity), D::monotone(k, kInfinity), "backward-chain");
  }

  for (int i = 0; i <= cfg.max_i; ++i) {
    const int k = 1 << i;
    if (std::find(pc.powers.begin(), pc.powers.end(), k) == pc.powers.end()) continue;
    add(D::stefan(k, 3), D::two_param(2 * k, 2, 2), "stefan3-square");
    for (int n = 1; 2 * n + 1 <= top; ++n) {
      add(D::stefan(k, 2 * n + 1), D::two_param(2 * k, n, n + 1), "stefan-odd-square");
    }
    for (int m = 1; 2 * m + 3 <= top; ++m) {
      if (k * (2 * m + 3) > top) break;
      add(D::stefan(k, 2 * m + 1), D::period(k * (2 * m + 3)), "stefan-period");
      add(D::period(k * (2 * m + 3)), D::stefan(k, 2 * m + 3), "stefan-period");
    }
  }

  both(D::period(3), D::stefan(1, 3));
  both(D::stefan(1, 3), D::monotone(1, 3));
  both(D::period(3), D::monotone(1, 3));
  both(D::monotone(2, 3), D::period(6));
  both(D::period(6), D::stefan(2, 3));
  both(D::monotone(2, 3), D::stefan(2, 3));

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Arrow& a, const Arrow& b) { return a.from == b.from && a.to == b.to; }),
            out.end());
  return out;
}

MapVerification verify_map(const PLMap& f, const VerifyConfig& cfg) {
  PropertyChecker checker(f, cfg.properties);
  MapVerification out;
  for (const Arrow& a : arrow_table(cfg)) {
    const PropertyStatus from = checker.check(a.from);
    if (from.unknown()) {
      ++out.skipped_unknown;
      continue;
    }
    ++out.arrows_checked;
    if (!from.holds()) continue;
    ++out.exercised[a.source];
    const PropertyStatus to = checker.check(a.to);
    if (to.unknown()) {
      ++out.consequent_unknown;
    } else if (to.fails()) {
      out.violations.push_back(a);
    }
  }
  return out;
}

MapVerification verify_pattern(const Pattern& p, const VerifyConfig& cfg) {
  return verify_map(connect_the_dots(p), cfg);
}

bool is_down_set(const std::set<int>& periods, int max_n) {
  for (int n : periods) {
    for (int m = 1; m <= max_n; ++m) {
      if (sharkovskii_cmp(n, m) == Order::Precedes && !periods.count(m)) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::string, PLMap>> fixture_maps() {
  return {{"tent", parse_map("0:0,1/2:1,1:0")}, {"identity", parse_map("0:0,1:1")}};
}

int CorpusReport::violation_count() const {
  int n = 0;
  for (const auto& e : entries) n += static_cast<int>(e.result.violations.size());
  return n;
}

int CorpusReport::unknown_count() const {
  int n = 0;
  for (const auto& e : entries) n += e.result.skipped_unknown + e.result.consequent_unknown + e.forced_unknown;
  return n;
}

int CorpusReport::down_set_failures() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.down_set; }));
}

int CorpusReport::class_count() const {
  int n = 0;
  for (const auto& [period, count] : classes_per_period) n += count;
  return n;
}

CorpusReport verify_corpus(int max_period, const VerifyConfig& cfg) {
  if (max_period < 2) throw InvalidInput("corpus needs max period >= 2");
  CorpusReport report;
  std::vector<PLMap> maps;
  for (int n = 2; n <= max_period; ++n) {
    const auto patterns = enumerate(n, std::max(max_period, cfg.properties.limits.max_enumerate_period));
    report.classes_per_period[n] = static_cast<int>(patterns.size());
    for (const auto& p : patterns) {
      report.entries.push_back({to_string(p), {}, {}, false, true});
      maps.push_back(connect_the_dots(p));
    }
  }
  for (auto& [name, f] : fixture_maps()) {
    report.entries.push_back({name, {}, {}, false, true});
    maps.push_back(std::move(f));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < maps.size(); i = next++) {
      CorpusEntry& e = report.entries[i];
      e.result = verify_map(maps[i], cfg);
      try {
        e.forced = map_periods(maps[i], cfg.properties.max_period, cfg.properties.limits);
        e.down_set = is_down_set(e.forced, cfg.properties.max_period);
      } catch (const CapExceeded&) {
        e.forced_unknown = true;
      }
    }
  };
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return report;
}

}  // namespace orbitforge
