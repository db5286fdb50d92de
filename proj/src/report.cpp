#include "orbitforge/report.hpp"

#include "orbitforge/errors.hpp"
#include "orbitforge/orbit_search.hpp"

namespace orbitforge {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Interval& iv) {
  return Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

Json to_json(const FiniteOrbit& o) {
  Json pts = Json::array();
  for (const auto& x : o.points) pts.push_back(to_json(x));
  return Json{{"kind", "orbit"}, {"period", o.period()}, {"points", pts}};
}

Json to_json(const BackwardChainWitness& w) {
  Json chain = Json::array();
  for (const auto& x : w.chain) chain.push_back(to_json(x));
  return Json{{"kind", "backward_chain"}, {"side", to_string(w.side)},  {"prefix_length", w.prefix_length},
              {"z", to_json(w.z)},        {"limit", to_json(w.limit)}, {"w", to_json(w.anchor)},
              {"chain", chain},           {"certified", w.certified}};
}

Json to_json(const Witness& w) {
  if (const auto* o = std::get_if<FiniteOrbit>(&w)) return to_json(*o);
  if (const auto* c = std::get_if<BackwardChainWitness>(&w)) return to_json(*c);
  const auto& two = std::get<TwoSidedChainWitness>(w);
  return Json{{"kind", "two_sided_chain"}, {"right", to_json(two.right)}, {"left", to_json(two.left)}};
}

Json to_json(const PropertyDescriptor& d, const PropertyStatus& s) {
  Json j{{"descriptor", to_string(d)}, {"status", to_string(s.verdict)}};
  if (s.witness) j["witness"] = to_json(*s.witness);
  if (s.unknown()) j["reason"] = s.reason;
  return j;
}

Json to_json(const ConstructionTrace& t) {
  Json chain = Json::array();
  for (const auto& iv : t.chain) chain.push_back(Json::array({to_json(iv.lo), to_json(iv.hi)}));
  Json j{{"construction", to_string(t.kind)},
         {"power", t.power},
         {"source", to_json(t.source)},
         {"z", to_json(t.z)},
         {"w", to_json(t.w)},
         {"chain", chain},
         {"result", to_json(t.result)},
         {"type", to_string(t.expected)}};
  if (t.aux_fixed) {
    const auto& [a, b, c] = *t.aux_fixed;
    j["aux_fixed"] = Json{{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}};
  }
  return j;
}

Json to_json(const MarkovGraph& g) {
  Json edges = Json::array();
  for (auto [r, s] : g.edges()) edges.push_back(Json::array({r, s}));
  return Json{{"vertices", g.vertices}, {"edges", edges}};
}

Json to_json(const CorpusReport& r) {
  Json per_n = Json::object();
  for (auto [n, count] : r.classes_per_period) per_n[std::to_string(n)] = count;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json violations = Json::array();
    for (const auto& a : e.result.violations) violations.push_back(to_string(a));
    entries.push_back(Json{{"label", e.label},
                           {"violations", violations},
                           {"arrows_checked", e.result.arrows_checked},
                           {"unknown", e.result.skipped_unknown + e.result.consequent_unknown + e.forced_unknown},
                           {"forced_periods", e.forced},
                           {"down_set", e.down_set}});
  }
  return Json{{"classes_per_period", per_n}, {"classes", r.class_count()},
              {"violations", r.violation_count()}, {"unknown", r.unknown_count()},
              {"down_set_failures", r.down_set_failures()}, {"maps", entries}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Analysis analyze(const AnalysisInput& in, const PropertyConfig& cfg, bool traces) {
  Analysis out;
  Json& r = out.report;
  r["input"] = in.echo;

  Json forced = Json::array();
  for (int n = 1; n <= cfg.max_period; ++n) {
    try {
      if (find_periodic_orbit(in.map, n, cfg.limits)) forced.push_back(n);
    } catch (const CapExceeded& e) {
      out.complete = false;
      r["forced_periods_incomplete"] = std::string("period ") + std::to_string(n) + ": " + e.what();
      break;
    }
  }
  r["forced_periods"] = forced;
  r["markov"] = in.pattern ? to_json(covering_graph(*in.pattern)) : Json{{"edges", Json::array()}};

  Json props = Json::array();
  out.properties = check_all(in.map, cfg);
  for (const auto& [d, s] : out.properties) {
    if (s.unknown()) out.complete = false;
    props.push_back(to_json(d, s));
  }
  r["properties"] = props;

  if (traces && in.orbit) {
    Json list = Json::array();
    auto attempt = [&](auto&& build) {
      try {
        list.push_back(build());
      } catch (const TypeMismatch&) {
      }
    };
    attempt([&] { return to_json(extend_two_param(in.map, *in.orbit, Side::Right, cfg.limits)); });
    attempt([&] { return to_json(extend_two_param(in.map, *in.orbit, Side::Left, cfg.limits)); });
    attempt([&] { return to_json(stefan3_to_L22(in.map, *in.orbit, cfg.limits)); });
    attempt([&] {
      Json j{{"construction", "stefan_to_two_param"}, {"result", to_json(stefan_to_two_param(in.map, *in.orbit))}};
      return j;
    });
    attempt([&] {
      Json j{{"construction", "backward_prefix"}, {"result", to_json(backward_prefix(in.map, *in.orbit, cfg.chain_depth))}};
      return j;
    });
    r["traces"] = list;
  }
  return out;
}

}  // namespace orbitforge
