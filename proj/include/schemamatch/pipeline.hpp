#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schemamatch/clustering.hpp"
#include "schemamatch/dictionary.hpp"
#include "schemamatch/evaluation.hpp"
#include "schemamatch/features.hpp"
#include "schemamatch/matching.hpp"
#include "schemamatch/report.hpp"

namespace schemamatch {

inline const std::vector<int> kDefaultClusterSizes = {25, 30, 35, 40, 45, 50, 55};

struct PipelineConfig {
  std::string source_schema_path;
  std::string source_data_path;
  std::string test_schema_path;
  std::string test_data_path;
  std::string dictionary_path = SCHEMAMATCH_DEFAULT_DICTIONARY;
  MatchMethod method = MatchMethod::Combined;
  ClusterAlgorithm algorithm = ClusterAlgorithm::Som;
  Measure measure = Measure::Edit;
  std::vector<int> cluster_sizes = kDefaultClusterSizes;
  std::uint64_t seed = 42;
  int som_epochs = 500;
  bool bijective = false;
  bool otm_both_directions = false;
  std::optional<std::string> gold_path;
  std::optional<std::string> output_path;
};

struct PreparedFeatures {
  OneToManyResult one_to_many;
  std::vector<FeatureVector> raw;         // unconsumed source attributes, then test
  std::vector<FeatureVector> normalized;  // same order, jointly scaled
};

struct PipelineResult {
  MatchReport report;
  SweepResult<double> sweep;
  std::optional<EvalReport> eval;
};

// Ingest both tables, run the dictionary pass, extract and normalize the
// features of every attribute not consumed by a one-to-many match.
PreparedFeatures prepare_features(const PipelineConfig& config);

// Source-only vectors for the centroid method, all of them for combined.
SweepResult<double> sweep_features(const std::vector<FeatureVector>& normalized, MatchMethod method,
                                   ClusterAlgorithm algorithm, const std::vector<int>& sizes,
                                   std::uint64_t seed, int som_epochs = 500);

// Sweep, then one-to-one matching with the chosen clustering.
PipelineResult match_features(const std::vector<FeatureVector>& normalized,
                              std::vector<OneToManyMatch> one_to_many, const PipelineConfig& config);

// Full run; evaluates against the gold file and writes the report when the
// config names them. Errors are re-thrown with the failing stage attached.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace schemamatch
