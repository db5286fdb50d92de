#pragma once

// JSON renderings. Keys come out sorted and every number that is not a
// small integer is a "p/q" string, so output is stable across runs.

#include "orbitforge/markov.hpp"
#include "orbitforge/properties.hpp"
#include "orbitforge/verify.hpp"
#include "orbitforge/witness.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace orbitforge {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const Interval& iv);
Json to_json(const FiniteOrbit& o);
Json to_json(const BackwardChainWitness& w);
Json to_json(const Witness& w);
Json to_json(const PropertyDescriptor& d, const PropertyStatus& s);
Json to_json(const ConstructionTrace& t);
Json to_json(const MarkovGraph& g);
Json to_json(const CorpusReport& r);

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

struct AnalysisInput {
  Json echo;  // what the user supplied
  PLMap map;
  std::optional<Pattern> pattern;
  std::optional<FiniteOrbit> orbit;  // an orbit of `map` of that pattern
};

struct Analysis {
  Json report;
  PropertyReport properties;
  bool complete = true;  // false when some cap was hit
};

// Forced periods, covering graph (pattern inputs), the property grid and,
// when asked, every construction that applies to the input orbit.
Analysis analyze(const AnalysisInput& in, const PropertyConfig& cfg, bool traces);

}  // namespace orbitforge
