#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schemamatch/clustering.hpp"
#include "schemamatch/dictionary.hpp"
#include "schemamatch/evaluation.hpp"
#include "schemamatch/features.hpp"
#include "schemamatch/matching.hpp"

namespace schemamatch {

struct MatchReport {
  std::vector<OneToManyMatch> one_to_many;
  std::vector<OneToOneMatch> one_to_one;  // test-schema order
};

// Report layout (tab separated, sections omitted when empty):
//
//   # schemamatch report v1
//   [one-to-many]
//   entry  key  components            components as attr:group,...
//   [one-to-one]
//   method  measure  cluster_id  test  source  similarity
//   [metrics]
//   tp  fp  fn  precision  recall  f1
//   otm  exact|mismatch                optional
std::string format_report(const MatchReport& report, const std::optional<EvalReport>& eval = std::nullopt);

// The metrics block without its section marker.
std::string format_metrics(const EvalReport& eval);

// Throws Error(Io) when the file cannot be written.
void emit_report(const MatchReport& report, const std::optional<EvalReport>& eval, const std::string& path);

// Reads the one-to-many and one-to-one sections back; metrics are ignored.
MatchReport parse_report(std::string_view content);

// `name,<20 feature names>` with 17 significant digits, so values read back
// bit-identical.
std::string format_feature_csv(const std::vector<FeatureVector>& vectors);
std::vector<FeatureVector> parse_feature_csv(std::string_view content, bool normalized);

// `size,silhouette` rows (NA when undefined) and a final `chosen,<size>` line.
std::string format_sweep_csv(const SweepResult<double>& sweep);

std::string format_fixed(double value, int decimals);

}  // namespace schemamatch
