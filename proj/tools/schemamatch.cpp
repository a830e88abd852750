// schemamatch: one-to-one and one-to-many schema matching from the command
// line. Exit codes: 0 success, 1 usage, 2 data/parse error, 3 pipeline error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "schemamatch/csv.hpp"
#include "schemamatch/error.hpp"
#include "schemamatch/pipeline.hpp"

using namespace schemamatch;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kPipelineError = 3;

const std::map<std::string, MatchMethod> kMethods = {{"centroid", MatchMethod::Centroid},
                                                     {"combined", MatchMethod::Combined}};
const std::map<std::string, ClusterAlgorithm> kAlgorithms = {{"som", ClusterAlgorithm::Som},
                                                             {"kmeans", ClusterAlgorithm::KMeans}};
const std::map<std::string, Measure> kMeasures = {
    {"edit", Measure::Edit}, {"euclidean", Measure::Euclidean}, {"cosine", Measure::Cosine}};

void add_inputs(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--source-schema", cfg.source_schema_path, "Source schema spec")->required()->check(CLI::ExistingFile);
  cmd->add_option("--source-data", cfg.source_data_path, "Source CSV data")->required()->check(CLI::ExistingFile);
  cmd->add_option("--test-schema", cfg.test_schema_path, "Test schema spec")->required()->check(CLI::ExistingFile);
  cmd->add_option("--test-data", cfg.test_data_path, "Test CSV data")->required()->check(CLI::ExistingFile);
  // Not checked here: a missing dictionary is reported by the ingest stage.
  cmd->add_option("--dictionary", cfg.dictionary_path, "Global one-to-many dictionary")->capture_default_str();
  cmd->add_flag("--otm-both-directions", cfg.otm_both_directions, "Also look for keys in the test schema");
}

void add_clustering(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--method", cfg.method, "centroid | combined")
      ->transform(CLI::CheckedTransformer(kMethods))
      ->default_str("combined");
  cmd->add_option("--cluster-algo", cfg.algorithm, "som | kmeans")
      ->transform(CLI::CheckedTransformer(kAlgorithms))
      ->default_str("som");
  cmd->add_option("--cluster-sizes", cfg.cluster_sizes, "Candidate cluster counts, comma separated")
      ->delimiter(',')
      ->default_str("25,30,35,40,45,50,55");
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--epochs", cfg.som_epochs, "SOM training epochs")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_matching(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--distance", cfg.measure, "edit | euclidean | cosine")
      ->transform(CLI::CheckedTransformer(kMeasures))
      ->default_str("edit");
  cmd->add_flag("--bijective", cfg.bijective, "Never map two test attributes to one source attribute");
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text).flush()) throw Error(ErrorCode::Io, "cannot write '" + *path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schema matching: feature profiling, clustering and edit-distance matching"};
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::optional<std::string> output;
  std::string features_path, otm_path, report_path, gold_path;
  std::optional<std::string> otm_out;
  bool raw = false;

  auto* run = app.add_subcommand("run", "Full pipeline: ingest, one-to-many, features, sweep, match, report");
  add_inputs(run, cfg);
  add_clustering(run, cfg);
  add_matching(run, cfg);
  run->add_option("--gold", cfg.gold_path, "Gold mapping for evaluation")->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "Report path (default stdout)");

  auto* features = app.add_subcommand("features", "Dump per-attribute feature vectors as CSV");
  add_inputs(features, cfg);
  features->add_flag("--raw", raw, "Raw vectors instead of jointly normalized ones");
  features->add_option("--otm-out", otm_out, "Also write the one-to-many matches as a report");
  features->add_option("-o,--output", output, "CSV path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Silhouette score per candidate cluster count");
  sweep->add_option("--features", features_path, "Normalized feature CSV")->required()->check(CLI::ExistingFile);
  add_clustering(sweep, cfg);
  sweep->add_option("-o,--output", output, "CSV path (default stdout)");

  auto* match = app.add_subcommand("match", "One-to-one matching from a normalized feature CSV");
  match->add_option("--features", features_path, "Normalized feature CSV")->required()->check(CLI::ExistingFile);
  match->add_option("--otm", otm_path, "Report holding one-to-many matches to carry over")->check(CLI::ExistingFile);
  add_clustering(match, cfg);
  add_matching(match, cfg);
  match->add_option("-o,--output", output, "Report path (default stdout)");

  auto* eval = app.add_subcommand("eval", "Precision, recall and F1 of a report against a gold mapping");
  eval->add_option("--report", report_path, "Match report")->required()->check(CLI::ExistingFile);
  eval->add_option("--gold", gold_path, "Gold mapping")->required()->check(CLI::ExistingFile);
  eval->add_option("-o,--output", output, "Output path (default stdout)");

  auto* dict_check = app.add_subcommand("dict-check", "Validate a dictionary file");
  dict_check->add_option("dictionary", cfg.dictionary_path, "Dictionary path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) {
      if (cfg.cluster_sizes.empty()) throw CLI::ValidationError("--cluster-sizes", "must not be empty");
      const auto result = run_pipeline(cfg);
      write_output(output, format_report(result.report, result.eval));
    } else if (*features) {
      const auto prepared = prepare_features(cfg);
      write_output(output, format_feature_csv(raw ? prepared.raw : prepared.normalized));
      if (otm_out) write_output(otm_out, format_report({prepared.one_to_many.matches, {}}));
    } else if (*sweep) {
      const auto vectors = parse_feature_csv(read_file(features_path), true);
      const auto result = sweep_features(vectors, cfg.method, cfg.algorithm, cfg.cluster_sizes, cfg.seed, cfg.som_epochs);
      write_output(output, format_sweep_csv(result));
    } else if (*match) {
      const auto vectors = parse_feature_csv(read_file(features_path), true);
      std::vector<OneToManyMatch> otm;
      if (!otm_path.empty()) otm = parse_report(read_file(otm_path)).one_to_many;
      const auto result = match_features(vectors, std::move(otm), cfg);
      write_output(output, format_report(result.report));
    } else if (*eval) {
      const auto report = parse_report(read_file(report_path));
      const auto gold = parse_gold(read_file(gold_path));
      write_output(output, format_metrics(evaluate(report.one_to_one, report.one_to_many, gold)));
    } else if (*dict_check) {
      const auto entries = parse_dictionary(read_file(cfg.dictionary_path));
      std::cout << "ok: " << entries.size() << " entr" << (entries.size() == 1 ? "y" : "ies") << '\n';
      for (const auto& e : entries) {
        std::cout << "  " << e.id << ": " << e.key_aliases.size() << " key alias(es), " << e.groups.size()
                  << " group(s)\n";
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_data_error(e.code()) ? kDataError : kPipelineError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPipelineError;
  }
  return 0;
}
