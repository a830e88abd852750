#include "schemamatch/pipeline.hpp"

#include "schemamatch/csv.hpp"
#include "schemamatch/error.hpp"
#include "schemamatch/ingest.hpp"

namespace schemamatch {

namespace {

template <typename F>
auto in_stage(const char* stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw Error(e.code(), stage, e.what());
  }
}

TableData load(const std::string& schema_path, const std::string& data_path, SchemaRole role) {
  auto schema = parse_schema_spec(read_file(schema_path), role);
  return load_table(std::move(schema), read_file(data_path));
}

std::vector<FeatureVector> source_only(const std::vector<FeatureVector>& all) {
  std::vector<FeatureVector> out;
  for (const auto& v : all) {
    if (is_source_attribute(v.owner)) out.push_back(v);
  }
  return out;
}

std::vector<FeatureVector> test_only(const std::vector<FeatureVector>& all) {
  std::vector<FeatureVector> out;
  for (const auto& v : all) {
    if (!is_source_attribute(v.owner)) out.push_back(v);
  }
  return out;
}

}  // namespace

PreparedFeatures prepare_features(const PipelineConfig& config) {
  const TableData source =
      in_stage("ingest", [&] { return load(config.source_schema_path, config.source_data_path, SchemaRole::Source); });
  const TableData test =
      in_stage("ingest", [&] { return load(config.test_schema_path, config.test_data_path, SchemaRole::Test); });
  const auto dictionary = in_stage("ingest", [&] { return parse_dictionary(read_file(config.dictionary_path)); });

  PreparedFeatures out;
  out.one_to_many = in_stage("one-to-many", [&] {
    return find_one_to_many_matches(source.schema, test.schema, dictionary, config.otm_both_directions);
  });

  in_stage("features", [&] {
    auto add_remaining = [&](const TableData& table, const std::set<std::string>& consumed) {
      for (std::size_t i = 0; i < table.schema.size(); ++i) {
        if (!consumed.count(table.schema[i].name)) {
          out.raw.push_back(extract_raw_features(table.schema[i], table.columns[i]));
        }
      }
    };
    add_remaining(source, out.one_to_many.consumed_source);
    add_remaining(test, out.one_to_many.consumed_test);
    out.normalized = normalize_feature_matrix(out.raw);
  });
  return out;
}

SweepResult<double> sweep_features(const std::vector<FeatureVector>& normalized, MatchMethod method,
                                   ClusterAlgorithm algorithm, const std::vector<int>& sizes, std::uint64_t seed,
                                   int som_epochs) {
  return in_stage("clustering", [&] {
    const auto points = method == MatchMethod::Centroid ? stack_features(source_only(normalized))
                                                        : stack_features(normalized);
    return select_best_clustering(points, sizes, algorithm, seed, SomOptions{som_epochs});
  });
}

PipelineResult match_features(const std::vector<FeatureVector>& normalized, std::vector<OneToManyMatch> one_to_many,
                              const PipelineConfig& config) {
  PipelineResult result;
  result.sweep =
      sweep_features(normalized, config.method, config.algorithm, config.cluster_sizes, config.seed, config.som_epochs);
  result.report.one_to_many = std::move(one_to_many);
  result.report.one_to_one = in_stage("matching", [&] {
    if (config.method == MatchMethod::Centroid) {
      return centroid_match(source_only(normalized), test_only(normalized), result.sweep.best, config.measure,
                            config.bijective);
    }
    return combined_match(normalized, result.sweep.best, config.measure, config.bijective);
  });
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  if (config.cluster_sizes.empty()) throw Error(ErrorCode::InvalidArgument, "config", "cluster size list is empty");

  auto prepared = prepare_features(config);
  auto result = match_features(prepared.normalized, std::move(prepared.one_to_many.matches), config);

  if (config.gold_path) {
    result.eval = in_stage("evaluation", [&] {
      const auto gold = parse_gold(read_file(*config.gold_path));
      return evaluate(result.report.one_to_one, result.report.one_to_many, gold);
    });
  }
  if (config.output_path) {
    in_stage("report", [&] { emit_report(result.report, result.eval, *config.output_path); });
  }
  return result;
}

}  // namespace schemamatch
