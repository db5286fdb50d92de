#pragma once

// Forcing relations between properties, and a harness that checks them on
// every pattern's model map.

#include "orbitforge/pattern.hpp"
#include "orbitforge/plmap.hpp"
#include "orbitforge/properties.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace orbitforge {

enum class Order { Precedes, Equal, Follows };

// Sharkovskii order: 3, 5, 7, ..., 2*3, 2*5, ..., 4*3, ..., 8, 4, 2, 1.
Order sharkovskii_cmp(int a, int b);
std::string to_string(Order o);

struct Arrow {
  PropertyDescriptor from;
  PropertyDescriptor to;
  std::string source;  // which family of implications it instantiates

  auto operator<=>(const Arrow&) const = default;
  bool operator==(const Arrow&) const = default;
};

std::string to_string(const Arrow& a);

struct VerifyConfig {
  PropertyConfig properties = [] {
    PropertyConfig c;
    c.powers = {1, 2};
    return c;
  }();
  int max_i = 1;        // S^{2^i} arrows use i <= max_i
  int max_mn = 4;       // finite two-parameter antecedents use m, n <= max_mn
  int min_mn = 2;
  int threads = 1;
};

// Arrows whose descriptors all fall inside the configured grid, sorted and
// without duplicates.
std::vector<Arrow> arrow_table(const VerifyConfig& cfg = {});

bool in_grid(const PropertyDescriptor& d, const PropertyConfig& cfg);

struct MapVerification {
  std::vector<Arrow> violations;
  int arrows_checked = 0;   // antecedent decided as Holds or Fails
  int skipped_unknown = 0;  // antecedent Unknown
  int consequent_unknown = 0;
  std::map<std::string, int> exercised;  // arrows per source with a holding antecedent
  bool unknown() const { return skipped_unknown + consequent_unknown > 0; }
};

MapVerification verify_map(const PLMap& f, const VerifyConfig& cfg = {});
MapVerification verify_pattern(const Pattern& p, const VerifyConfig& cfg = {});

// True when n in periods and n precedes m imply m in periods, for m <= max_n.
bool is_down_set(const std::set<int>& periods, int max_n);

struct CorpusEntry {
  std::string label;
  MapVerification result;
  std::set<int> forced;
  bool forced_unknown = false;  // period search hit a cap
  bool down_set = true;
};

struct CorpusReport {
  std::map<int, int> classes_per_period;
  std::vector<CorpusEntry> entries;  // patterns by period, then fixtures

  int violation_count() const;
  int unknown_count() const;
  int down_set_failures() const;
  int class_count() const;
};

// The model maps of all patterns of period 2..max_period plus the tent and
// identity fixtures.
CorpusReport verify_corpus(int max_period, const VerifyConfig& cfg = {});

// Named non-pattern maps included in the corpus.
std::vector<std::pair<std::string, PLMap>> fixture_maps();

}  // namespace orbitforge
