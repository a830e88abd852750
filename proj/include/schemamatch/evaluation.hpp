#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schemamatch/dictionary.hpp"
#include "schemamatch/matching.hpp"

namespace schemamatch {

// Order-insensitive view of a one-to-many correspondence.
struct OneToManyRecord {
  std::string key;
  std::set<std::string> components;

  auto operator<=>(const OneToManyRecord&) const = default;
};

struct GoldMapping {
  std::set<std::pair<std::string, std::string>> pairs;  // (source, test)
  std::optional<std::set<OneToManyRecord>> otm;
};

struct EvalReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<bool> otm_exact;  // set when the gold file has an [OTM] section
};

// Precision, recall and F1 from raw counts; zero denominators give 0.
EvalReport metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

// CSV with header `source,test`, optionally followed by an `[OTM]` section of
// `key;comp1,comp2,...` lines.
GoldMapping parse_gold(std::string_view content);

// Throws Error(MalformedPrediction) if a test attribute appears twice.
EvalReport evaluate_one_to_one(const std::vector<OneToOneMatch>& predicted, const GoldMapping& gold);

// Adds the one-to-many set comparison when the gold mapping carries one.
EvalReport evaluate(const std::vector<OneToOneMatch>& predicted, const std::vector<OneToManyMatch>& otm,
                    const GoldMapping& gold);

}  // namespace schemamatch
