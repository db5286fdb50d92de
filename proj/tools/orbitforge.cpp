// orbitforge command line: analyze, enumerate, verify, witness.
//
// exit codes: 0 ok, 1 verification violation, 2 bad input, 3 resource cap

#include "orbitforge/errors.hpp"
#include "orbitforge/markov.hpp"
#include "orbitforge/report.hpp"
#include "orbitforge/verify.hpp"
#include "orbitforge/witness.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace orbitforge;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kBadInput = 2;
constexpr int kCap = 3;

long env_int(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0) throw InvalidInput(std::string(name) + " must be a non-negative integer");
  return n;
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::vector<int> parse_powers(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size() || k < 1) throw InvalidInput("");
      out.push_back(k);
    } catch (const std::exception&) {
      throw InvalidInput("bad power list '" + text + "'");
    }
  }
  if (out.empty()) throw InvalidInput("empty power list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FiniteOrbit grid_orbit(const Pattern& p) {
  FiniteOrbit o;
  for (int r : p.ranks_in_time_order(0)) o.points.push_back(Rational(r));
  return o;
}

struct Source {
  std::string pattern, orbit, map;
};

void add_source(CLI::App* cmd, Source& s) {
  cmd->add_option("--pattern", s.pattern, "cyclic permutation, e.g. 2,0,3,1");
  cmd->add_option("--orbit", s.orbit, "periodic orbit in time order, e.g. 1/2,3/2,0");
  cmd->add_option("--map", s.map, "PL map nodes, e.g. 0:0,1/2:1,1:0");
}

// Pattern inputs use the grid orbit on the model map.
AnalysisInput resolve(const Source& s, bool orbit_with_map) {
  const int given = !s.pattern.empty() + !s.orbit.empty() + !s.map.empty();
  AnalysisInput in{Json::object(), parse_map("0:0,1:1"), std::nullopt, std::nullopt};
  if (!s.map.empty()) {
    const bool ok = orbit_with_map ? (given == 1 || (given == 2 && !s.orbit.empty())) : given == 1;
    if (!ok) throw InvalidInput("conflicting input options");
    in.map = parse_map(s.map);
    in.echo["map"] = to_string(in.map);
    if (!s.orbit.empty()) {
      FiniteOrbit o{parse_rational_list(s.orbit)};
      if (!is_orbit(in.map, o)) throw InvalidInput("--orbit is not a periodic orbit of --map");
      in.orbit = o;
      in.pattern = from_orbit(o.points);
      in.echo["orbit"] = to_json(o)["points"];
    }
    return in;
  }
  if (given != 1) throw InvalidInput("give exactly one of --pattern, --orbit, --map");
  if (!s.pattern.empty()) {
    in.pattern = parse_pattern(s.pattern);
  } else {
    FiniteOrbit o{parse_rational_list(s.orbit)};
    in.pattern = from_orbit(o.points);
    in.echo["orbit"] = to_json(o)["points"];
  }
  in.echo["pattern"] = to_string(*in.pattern);
  in.map = connect_the_dots(*in.pattern);
  in.orbit = grid_orbit(*in.pattern);
  return in;
}

std::string witness_summary(const Witness& w) {
  if (const auto* o = std::get_if<FiniteOrbit>(&w)) return "orbit " + join(o->points);
  auto chain = [](const BackwardChainWitness& c) {
    return "z=" + to_string(c.z) + " L=" + to_string(c.limit) + " w=" + to_string(c.anchor) +
           " side=" + to_string(c.side) + " chain " + join(c.chain);
  };
  if (const auto* c = std::get_if<BackwardChainWitness>(&w)) return chain(*c);
  const auto& two = std::get<TwoSidedChainWitness>(w);
  return "right: " + chain(two.right) + " | left: " + chain(two.left);
}

std::string analysis_text(const Json& r) {
  std::ostringstream out;
  for (const auto& [key, value] : r["input"].items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  out << "forced periods:";
  for (const auto& n : r["forced_periods"]) out << " " << n.get<int>();
  out << "\nmarkov edges:";
  for (const auto& e : r["markov"]["edges"]) out << " " << e[0].get<int>() << "->" << e[1].get<int>();
  out << "\n";
  return out.str();
}

struct Limits {
  long piece_cap = 0;
  long branch_cap = 0;
};

void add_limits(CLI::App* cmd, Limits& l) {
  cmd->add_option("--piece-cap", l.piece_cap, "max pieces of an iterate (env ORBITFORGE_PIECE_CAP)");
  cmd->add_option("--branch-cap", l.branch_cap, "max itinerary search branches");
}

PropertyConfig property_config(const Limits& l, PropertyConfig cfg = {}) {
  cfg.limits.piece_cap = l.piece_cap > 0 ? l.piece_cap : env_int("ORBITFORGE_PIECE_CAP", cfg.limits.piece_cap);
  if (l.branch_cap > 0) cfg.limits.branch_cap = l.branch_cap;
  return cfg;
}

int run_analyze(const Source& src, const Limits& lim, int max_period, const std::string& powers,
                const std::string& json, const std::string& dot, bool traces) {
  PropertyConfig cfg = property_config(lim);
  cfg.max_period = max_period > 0 ? max_period : static_cast<int>(env_int("ORBITFORGE_MAX_PERIOD", 9));
  if (cfg.max_period < 1) throw InvalidInput("--max-period must be >= 1");
  if (!powers.empty()) cfg.powers = parse_powers(powers);
  const AnalysisInput in = resolve(src, false);
  if (!dot.empty() && !in.pattern) throw InvalidInput("--dot needs a pattern or orbit input");

  const Analysis a = analyze(in, cfg, traces);
  if (!json.empty()) {
    emit(json, dump(a.report));
  } else {
    std::cout << analysis_text(a.report);
    for (const auto& [d, s] : a.properties) {
      std::cout << to_string(d) << "  " << to_string(s.verdict);
      if (s.witness) std::cout << "  " << witness_summary(*s.witness);
      if (s.unknown()) std::cout << "  (" << s.reason << ")";
      std::cout << "\n";
    }
    if (a.report.contains("traces")) {
      for (const auto& t : a.report["traces"]) std::cout << "trace " << t.dump() << "\n";
    }
  }
  if (!dot.empty()) emit(dot, to_dot(covering_graph(*in.pattern)));
  if (!a.complete) {
    std::cerr << "orbitforge: resource cap reached, report is partial\n";
    return kCap;
  }
  return kOk;
}

int run_enumerate(int period, bool with_tags, int cap) {
  const int limit = cap > 0 ? cap : static_cast<int>(env_int("ORBITFORGE_MAX_PERIOD", 10));
  for (const auto& p : enumerate(period, limit)) {
    std::cout << to_string(p);
    if (with_tags) {
      std::cout << " ";
      for (const auto& t : classify(p)) std::cout << " " << to_string(t);
    }
    std::cout << "\n";
  }
  return kOk;
}

int run_verify(int max_period, const Limits& lim, int threads, bool strict, const std::string& json) {
  VerifyConfig cfg;
  cfg.properties = property_config(lim, cfg.properties);
  cfg.threads = threads > 0 ? threads : static_cast<int>(env_int("ORBITFORGE_THREADS", 1));
  const int top = max_period > 0 ? max_period : static_cast<int>(env_int("ORBITFORGE_MAX_PERIOD", 7));
  const CorpusReport r = verify_corpus(top, cfg);

  if (!json.empty()) {
    emit(json, dump(to_json(r)));
  } else {
    for (const auto& [n, count] : r.classes_per_period) std::cout << "period " << n << ": " << count << " classes\n";
    for (const auto& e : r.entries) {
      for (const auto& a : e.result.violations) std::cout << "violation " << e.label << ": " << to_string(a) << "\n";
      if (!e.down_set) std::cout << "not a down-set " << e.label << "\n";
    }
    std::cout << "fixtures:";
    for (const auto& [name, f] : fixture_maps()) std::cout << " " << name;
    std::cout << "\n" << r.class_count() << " classes, " << r.violation_count() << " violations\n";
    std::cout << "unknown: " << r.unknown_count() << "\n";
    std::cout << "down-set failures: " << r.down_set_failures() << "\n";
  }
  if (r.violation_count() > 0 || r.down_set_failures() > 0) return kViolation;
  if (strict && r.unknown_count() > 0) return kCap;
  return kOk;
}

void print_trace(const ConstructionTrace& t) {
  std::cout << "construction: " << to_string(t.kind) << "\n";
  std::cout << "source: " << join(t.source.points) << "\n";
  std::cout << "z = " << to_string(t.z) << "\nw = " << to_string(t.w) << "\n";
  if (t.aux_fixed) {
    const auto& [a, b, c] = *t.aux_fixed;
    std::cout << "a = " << to_string(a) << "\nb = " << to_string(b) << "\nc = " << to_string(c) << "\n";
  }
  std::cout << "chain:";
  for (const auto& j : t.chain) std::cout << " [" << to_string(j.lo) << "," << to_string(j.hi) << "]";
  std::cout << "\nresult (f^" << t.power << "): " << join(t.result.points) << "\n";
  std::cout << "period " << t.result.period() << ", type " << to_string(t.expected) << "\n";
}

int run_witness(const std::string& construction, const Source& src, const Limits& lim, const std::string& side,
                int depth, const std::string& json) {
  const PropertyConfig cfg = property_config(lim);
  const AnalysisInput in = resolve(src, true);
  if (!in.orbit) throw InvalidInput("--map needs --orbit for a construction");
  if (side != "right" && side != "left") throw InvalidInput("--side must be right or left");
  const Side s = side == "right" ? Side::Right : Side::Left;

  if (construction == "extend" || construction == "stefan3") {
    const ConstructionTrace t = construction == "extend" ? extend_two_param(in.map, *in.orbit, s, cfg.limits)
                                                         : stefan3_to_L22(in.map, *in.orbit, cfg.limits);
    if (!verify_trace(in.map, t)) throw std::logic_error("construction trace failed re-verification");
    if (!json.empty()) {
      emit(json, dump(to_json(t)));
    } else {
      print_trace(t);
    }
    return kOk;
  }
  if (construction == "stefan2n1") {
    const FiniteOrbit o = stefan_to_two_param(in.map, *in.orbit);
    const auto tags = classify(from_orbit(o.points));
    if (!json.empty()) {
      Json j{{"construction", "stefan_to_two_param"}, {"result", to_json(o)}};
      Json names = Json::array();
      for (const auto& t : tags) names.push_back(to_string(t));
      j["types"] = names;
      emit(json, dump(j));
    } else {
      std::cout << "construction: stefan_to_two_param\nresult (f^2): " << join(o.points) << "\ntypes:";
      for (const auto& t : tags) std::cout << " " << to_string(t);
      std::cout << "\n";
    }
    return kOk;
  }
  if (construction == "backward") {
    const BackwardChainWitness w = backward_prefix(in.map, *in.orbit, depth);
    if (!json.empty()) {
      emit(json, dump(to_json(w)));
    } else {
      std::cout << "construction: backward_prefix\nz = " << to_string(w.z) << "\nL = " << to_string(w.limit)
                << "\nside: " << to_string(w.side) << "\nprefix length: " << w.prefix_length
                << "\nchain: " << join(w.chain) << "\ncertified: " << (w.certified ? "yes" : "no") << "\n";
    }
    return kOk;
  }
  throw InvalidInput("unknown construction '" + construction + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact orbit-type forcing for interval maps"};
  app.require_subcommand(1);

  Source src;
  Limits lim;
  int max_period = 0;
  std::string powers, json, dot;
  bool traces = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "forced periods, covering graph and property grid");
  add_source(analyze_cmd, src);
  add_limits(analyze_cmd, lim);
  analyze_cmd->add_option("--max-period", max_period, "largest period examined (env ORBITFORGE_MAX_PERIOD)");
  analyze_cmd->add_option("--k", powers, "powers of f, e.g. 1,2,4");
  analyze_cmd->add_option("--json", json, "write JSON report to PATH or - for stdout");
  analyze_cmd->add_option("--dot", dot, "write the covering graph in DOT form");
  analyze_cmd->add_flag("--traces", traces, "include every construction that applies to the orbit");

  int period = 0, enum_cap = 0;
  bool with_tags = false;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "patterns of one period up to reversal");
  enumerate_cmd->add_option("--period", period, "period n >= 2")->required();
  enumerate_cmd->add_flag("--classify", with_tags, "append template types");
  enumerate_cmd->add_option("--max-period", enum_cap, "refuse periods above this (env ORBITFORGE_MAX_PERIOD)");

  int threads = 0;
  bool strict = false;
  auto* verify_cmd = app.add_subcommand("verify", "check every forcing arrow on every pattern up to a period");
  verify_cmd->add_option("--max-period", max_period, "largest pattern period (env ORBITFORGE_MAX_PERIOD)");
  verify_cmd->add_option("--threads", threads, "worker threads (env ORBITFORGE_THREADS)");
  verify_cmd->add_flag("--strict", strict, "exit 3 when any status is unknown");
  verify_cmd->add_option("--json", json, "write JSON summary to PATH or - for stdout");
  add_limits(verify_cmd, lim);

  std::string construction, side = "right";
  int depth = 8;
  auto* witness_cmd = app.add_subcommand("witness", "run one construction and print its trace");
  witness_cmd->add_option("--construction", construction, "extend | stefan3 | stefan2n1 | backward")->required();
  add_source(witness_cmd, src);
  add_limits(witness_cmd, lim);
  witness_cmd->add_option("--side", side, "right or left (extend)");
  witness_cmd->add_option("--depth", depth, "chain length (backward)");
  witness_cmd->add_option("--json", json, "write JSON trace to PATH or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (analyze_cmd->parsed()) return run_analyze(src, lim, max_period, powers, json, dot, traces);
    if (enumerate_cmd->parsed()) return run_enumerate(period, with_tags, enum_cap);
    if (verify_cmd->parsed()) return run_verify(max_period, lim, threads, strict, json);
    if (witness_cmd->parsed()) return run_witness(construction, src, lim, side, depth, json);
  } catch (const InvalidInput& e) {
    std::cerr << "orbitforge: " << e.what() << "\n";
    return kBadInput;
  } catch (const CapExceeded& e) {
    std::cerr << "orbitforge: cap reached: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "orbitforge: internal error: " << e.what() << "\n";
    return kViolation;
  }
  return kBadInput;
}
