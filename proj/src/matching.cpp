#include "schemamatch/matching.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "schemamatch/error.hpp"

namespace schemamatch {

namespace {

struct Candidate {
  std::size_t test = 0;  // position in the output list
  std::size_t source = 0;
  CandidateScore score;
};

// Higher rank first, then the lexicographically smaller source name.
bool better(const CandidateScore& a, const std::string& a_name, const CandidateScore& b,
            const std::string& b_name) {
  if (a.rank != b.rank) return a.rank > b.rank;
  return a_name < b_name;
}

// Fills `out[i]` from per-test candidate lists, either best-per-test or by
// greedy global assignment that never reuses a source attribute.
void resolve(std::vector<OneToOneMatch>& out, const std::vector<std::vector<Candidate>>& candidates,
             const std::vector<FeatureVector>& sources, bool bijective) {
  if (!bijective) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Candidate* best = nullptr;
      for (const auto& c : candidates[i]) {
        if (!best || better(c.score, sources[c.source].owner, best->score, sources[best->source].owner)) best = &c;
      }
      if (best) {
        out[i].source_attribute = sources[best->source].owner;
        out[i].similarity = best->score.similarity;
      }
    }
    return;
  }

  std::vector<Candidate> all;
  for (const auto& list : candidates) all.insert(all.end(), list.begin(), list.end());
  std::stable_sort(all.begin(), all.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.score.rank != b.score.rank) return a.score.rank > b.score.rank;
    if (a.test != b.test) return a.test < b.test;
    return sources[a.source].owner < sources[b.source].owner;
  });
  std::vector<bool> test_done(out.size(), false);
  std::set<std::size_t> used;
  for (const auto& c : all) {
    if (test_done[c.test] || used.count(c.source)) continue;
    test_done[c.test] = true;
    used.insert(c.source);
    out[c.test].source_attribute = sources[c.source].owner;
    out[c.test].similarity = c.score.similarity;
  }
}

}  // namespace

const char* to_string(Measure m) noexcept {
  switch (m) {
    case Measure::Edit: return "edit";
    case Measure::Euclidean: return "euclidean";
    case Measure::Cosine: return "cosine";
  }
  return "?";
}

const char* to_string(MatchMethod m) noexcept { return m == MatchMethod::Centroid ? "centroid" : "combined"; }

std::optional<Measure> parse_measure(std::string_view s) {
  if (s == "edit") return Measure::Edit;
  if (s == "euclidean") return Measure::Euclidean;
  if (s == "cosine") return Measure::Cosine;
  return std::nullopt;
}

std::optional<MatchMethod> parse_method(std::string_view s) {
  if (s == "centroid") return MatchMethod::Centroid;
  if (s == "combined") return MatchMethod::Combined;
  return std::nullopt;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i + 1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t above = row[j + 1];
      row[j + 1] = std::min({above + 1, row[j] + 1, diagonal + (a[i] == b[j] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::string_view strip_role_prefix(std::string_view name) {
  if (name.starts_with("tr_") || name.starts_with("ts_")) name.remove_prefix(3);
  return name;
}

bool is_source_attribute(std::string_view name) { return name.starts_with("tr_"); }

double name_similarity(std::string_view a, std::string_view b) {
  a = strip_role_prefix(a);
  b = strip_role_prefix(b);
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

CandidateScore score_pair(const FeatureVector& source, const FeatureVector& test, Measure measure) {
  switch (measure) {
    case Measure::Edit: {
      const double s = name_similarity(source.owner, test.owner);
      return {s, s};
    }
    case Measure::Euclidean: {
      const double d = euclidean_distance(source.values, test.values);
      return {-d, 1.0 / (1.0 + d)};
    }
    case Measure::Cosine: {
      const double c = cosine_similarity(source.values, test.values);
      return {c, std::clamp(c, 0.0, 1.0)};
    }
  }
  return {};
}

std::vector<OneToOneMatch> centroid_match(const std::vector<FeatureVector>& source,
                                          const std::vector<FeatureVector>& test,
                                          const ClusteringResult<double>& source_clustering, Measure measure,
                                          bool bijective) {
  if (source.empty() || source_clustering.cluster_count() == 0) {
    throw Error(ErrorCode::NoCandidates, "centroid matching needs a non-empty source clustering");
  }
  if (source_clustering.assignments.size() != source.size()) {
    throw Error(ErrorCode::InvalidArgument, "source clustering does not cover the source attributes");
  }

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(source_clustering.cluster_count()));
  for (std::size_t i = 0; i < source.size(); ++i) {
    members[static_cast<std::size_t>(source_clustering.assignments[i])].push_back(i);
  }

  std::vector<OneToOneMatch> out(test.size());
  std::vector<std::vector<Candidate>> candidates(test.size());
  for (std::size_t t = 0; t < test.size(); ++t) {
    int cluster = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < source_clustering.cluster_count(); ++c) {
      const double d = euclidean_distance(source_clustering.centroids.row(c).transpose(), test[t].values);
      if (d < best) {
        best = d;
        cluster = c;
      }
    }
    out[t] = {test[t].owner, std::nullopt, std::nullopt, measure, MatchMethod::Centroid, cluster};
    for (std::size_t s : members[static_cast<std::size_t>(cluster)]) {
      candidates[t].push_back({t, s, score_pair(source[s], test[t], measure)});
    }
  }
  resolve(out, candidates, source, bijective);
  return out;
}

std::vector<OneToOneMatch> combined_match(const std::vector<FeatureVector>& all,
                                          const ClusteringResult<double>& combined_clustering, Measure measure,
                                          bool bijective) {
  if (combined_clustering.assignments.size() != all.size()) {
    throw Error(ErrorCode::InvalidArgument, "combined clustering does not cover every attribute");
  }

  std::vector<std::vector<std::size_t>> source_members(static_cast<std::size_t>(combined_clustering.cluster_count()));
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (is_source_attribute(all[i].owner)) {
      source_members[static_cast<std::size_t>(combined_clustering.assignments[i])].push_back(i);
    }
  }

  std::vector<OneToOneMatch> out;
  std::vector<std::vector<Candidate>> candidates;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (is_source_attribute(all[i].owner)) continue;
    const int cluster = combined_clustering.assignments[i];
    const std::size_t t = out.size();
    out.push_back({all[i].owner, std::nullopt, std::nullopt, measure, MatchMethod::Combined, cluster});
    candidates.emplace_back();
    for (std::size_t s : source_members[static_cast<std::size_t>(cluster)]) {
      candidates.back().push_back({t, s, score_pair(all[s], all[i], measure)});
    }
  }
  resolve(out, candidates, all, bijective);
  return out;
}

}  // namespace schemamatch
