#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schemamatch/clustering.hpp"
#include "schemamatch/features.hpp"

namespace schemamatch {

enum class Measure { Edit, Euclidean, Cosine };
enum class MatchMethod { Centroid, Combined };

const char* to_string(Measure m) noexcept;
const char* to_string(MatchMethod m) noexcept;
std::optional<Measure> parse_measure(std::string_view s);
std::optional<MatchMethod> parse_method(std::string_view s);

struct OneToOneMatch {
  std::string test_attribute;
  std::optional<std::string> source_attribute;  // empty: no mapping available
  std::optional<double> similarity;             // present iff source_attribute is
  Measure measure = Measure::Edit;
  MatchMethod method = MatchMethod::Centroid;
  int cluster_id = 0;
};

// Two-row dynamic programming over bytes.
std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - levenshtein / longer length after dropping tr_/ts_ prefixes.
double name_similarity(std::string_view a, std::string_view b);

std::string_view strip_role_prefix(std::string_view name);
bool is_source_attribute(std::string_view name);

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar euclidean_distance(const Eigen::MatrixBase<DerivedA>& s,
                                             const Eigen::MatrixBase<DerivedB>& t) {
  return (s - t).norm();
}

// Zero when either vector has zero norm.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_similarity(const Eigen::MatrixBase<DerivedA>& s,
                                            const Eigen::MatrixBase<DerivedB>& t) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar ns = s.norm();
  const Scalar nt = t.norm();
  if (ns == Scalar(0) || nt == Scalar(0)) return Scalar(0);
  return s.dot(t) / (ns * nt);
}

// Score used for ranking (higher is better) and the similarity reported for
// it: 1/(1+d) for Euclidean, cosine clamped to [0, 1].
struct CandidateScore {
  double rank = 0.0;
  double similarity = 0.0;
};

CandidateScore score_pair(const FeatureVector& source, const FeatureVector& test, Measure measure);

// Each test attribute searches the source cluster with the nearest centroid
// and takes its best-scoring member (ties: smallest source name). The
// clustering must cover exactly `source`.
std::vector<OneToOneMatch> centroid_match(const std::vector<FeatureVector>& source,
                                          const std::vector<FeatureVector>& test,
                                          const ClusteringResult<double>& source_clustering, Measure measure,
                                          bool bijective = false);

// `all` holds source and test vectors, told apart by their tr_/ts_ prefix;
// the clustering covers `all`. Test attributes in clusters with no source
// member come back unmatched.
std::vector<OneToOneMatch> combined_match(const std::vector<FeatureVector>& all,
                                          const ClusteringResult<double>& combined_clustering, Measure measure,
                                          bool bijective = false);

}  // namespace schemamatch
