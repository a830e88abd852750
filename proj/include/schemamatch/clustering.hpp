#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "schemamatch/error.hpp"
#include "schemamatch/random.hpp"

namespace schemamatch {

enum class ClusterAlgorithm { Som, KMeans };

inline const char* to_string(ClusterAlgorithm a) noexcept {
  return a == ClusterAlgorithm::Som ? "som" : "kmeans";
}

template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
struct ClusteringResult {
  ClusterAlgorithm algorithm = ClusterAlgorithm::KMeans;
  int k_requested = 0;
  std::vector<int> assignments;     // point index -> cluster id in [0, cluster_count)
  PointMatrix<Scalar> centroids;    // one row per non-empty cluster
  std::optional<Scalar> silhouette;
  std::uint64_t seed = 0;
  // K-means only: within-cluster SSE after each Lloyd step.
  std::vector<Scalar> objective_trace;

  int cluster_count() const { return static_cast<int>(centroids.rows()); }
};

template <typename Scalar>
struct SweepPoint {
  int size = 0;
  std::optional<Scalar> silhouette;  // empty when the clustering had < 2 clusters
};

template <typename Scalar>
struct SweepResult {
  ClusteringResult<Scalar> best;
  std::vector<SweepPoint<Scalar>> series;  // surviving sizes, in request order
};

namespace detail {

template <typename Derived>
Eigen::Index nearest_row(const PointMatrix<typename Derived::Scalar>& centers,
                         const Eigen::MatrixBase<Derived>& x) {
  Eigen::Index best = 0;
  auto best_d = std::numeric_limits<typename Derived::Scalar>::infinity();
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    const auto d = (centers.row(c) - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// Relabels arbitrary non-negative labels to 0..C-1 in ascending label order
// and recomputes every centroid as the mean of its members.
template <typename Derived>
void compact_and_average(const Eigen::MatrixBase<Derived>& points, std::vector<int>& labels,
                         PointMatrix<typename Derived::Scalar>& centroids) {
  using Scalar = typename Derived::Scalar;
  const int max_label = labels.empty() ? -1 : *std::max_element(labels.begin(), labels.end());
  std::vector<int> remap(static_cast<std::size_t>(max_label + 1), -1);
  for (int l : labels) remap[static_cast<std::size_t>(l)] = 0;
  int next = 0;
  for (int& r : remap) {
    if (r == 0) r = next++;
  }
  for (int& l : labels) l = remap[static_cast<std::size_t>(l)];

  centroids = PointMatrix<Scalar>::Zero(next, points.cols());
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(next), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    centroids.row(labels[i]) += points.row(static_cast<Eigen::Index>(i));
    ++counts[static_cast<std::size_t>(labels[i])];
  }
  for (int c = 0; c < next; ++c) centroids.row(c) /= static_cast<Scalar>(counts[static_cast<std::size_t>(c)]);
}

}  // namespace detail

// Within-cluster sum of squared Euclidean distances.
template <typename Derived, typename CentroidDerived>
typename Derived::Scalar within_cluster_sse(const Eigen::MatrixBase<Derived>& points,
                                            const std::vector<int>& labels,
                                            const Eigen::MatrixBase<CentroidDerived>& centroids) {
  typename Derived::Scalar total(0);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    total += (points.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return total;
}

inline constexpr int kKMeansMaxIterations = 300;

// Lloyd's algorithm seeded with k distinct rows drawn by the seeded
// generator. Emptied clusters take the point farthest from its centroid.
template <typename Derived>
ClusteringResult<typename Derived::Scalar> run_kmeans(const Eigen::MatrixBase<Derived>& points, int k,
                                                      std::uint64_t seed) {
  using Scalar = typename Derived::Scalar;
  const auto n = static_cast<int>(points.rows());
  if (k <= 0 || k > n) {
    throw Error(ErrorCode::InvalidK, "k-means needs 1 <= k <= " + std::to_string(n) + ", got k=" + std::to_string(k));
  }

  ClusteringResult<Scalar> result;
  result.algorithm = ClusterAlgorithm::KMeans;
  result.k_requested = k;
  result.seed = seed;

  SplitMix64 rng(seed);
  const auto initial = sample_without_replacement(rng, static_cast<std::size_t>(n), static_cast<std::size_t>(k));
  PointMatrix<Scalar> centers(k, points.cols());
  for (int c = 0; c < k; ++c) centers.row(c) = points.row(static_cast<Eigen::Index>(initial[static_cast<std::size_t>(c)]));

  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<int> next(static_cast<std::size_t>(n));
  std::vector<int> counts(static_cast<std::size_t>(k));

  for (int iter = 0; iter < kKMeansMaxIterations; ++iter) {
    for (int i = 0; i < n; ++i) next[static_cast<std::size_t>(i)] = static_cast<int>(detail::nearest_row(centers, points.row(i)));
    if (next == labels) break;
    labels = next;

    centers.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      centers.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
      ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) centers.row(c) /= static_cast<Scalar>(counts[static_cast<std::size_t>(c)]);
    }

    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      int donor = -1;
      Scalar far(-1);
      for (int i = 0; i < n; ++i) {
        const int own = labels[static_cast<std::size_t>(i)];
        if (counts[static_cast<std::size_t>(own)] < 2) continue;
        const Scalar d = (points.row(i) - centers.row(own)).squaredNorm();
        if (d > far) {
          far = d;
          donor = i;
        }
      }
      // k <= n guarantees a cluster with >= 2 members whenever one is empty.
      --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(donor)])];
      labels[static_cast<std::size_t>(donor)] = c;
      counts[static_cast<std::size_t>(c)] = 1;
      centers.row(c) = points.row(donor);
    }
    result.objective_trace.push_back(within_cluster_sse(points, labels, centers));
  }

  detail::compact_and_average(points, labels, result.centroids);
  result.assignments = std::move(labels);
  result.objective_trace.push_back(within_cluster_sse(points, result.assignments, result.centroids));
  return result;
}

struct SomOptions {
  int epochs = 500;
  double initial_learning_rate = 0.5;
};

// One-dimensional Kohonen map. Learning rate and neighbourhood width decay
// as exp(-t / epochs); the width starts at m / 2.
template <typename Scalar>
class SelfOrganizingMap {
 public:
  SelfOrganizingMap(int neurons, Eigen::Index dim, std::uint64_t seed, SomOptions options = {})
      : weights_(neurons, dim), options_(options) {
    if (neurons <= 0) throw Error(ErrorCode::InvalidArgument, "SOM needs at least one neuron");
    if (options.epochs <= 0) throw Error(ErrorCode::InvalidArgument, "SOM needs at least one epoch");
    SplitMix64 rng(seed);
    for (Eigen::Index r = 0; r < weights_.rows(); ++r) {
      for (Eigen::Index c = 0; c < weights_.cols(); ++c) weights_(r, c) = static_cast<Scalar>(rng.uniform01());
    }
  }

  template <typename Derived>
  int best_matching_unit(const Eigen::MatrixBase<Derived>& x) const {
    return static_cast<int>(detail::nearest_row(weights_, x));
  }

  Scalar learning_rate(int epoch) const {
    return static_cast<Scalar>(options_.initial_learning_rate * std::exp(-double(epoch) / options_.epochs));
  }

  Scalar neighbourhood_width(int epoch) const {
    return static_cast<Scalar>(0.5 * double(neurons()) * std::exp(-double(epoch) / options_.epochs));
  }

  // Presents one input during epoch `epoch`; returns the BMU.
  template <typename Derived>
  int update(const Eigen::MatrixBase<Derived>& x, int epoch) {
    const int bmu = best_matching_unit(x);
    const Scalar alpha = learning_rate(epoch);
    const Scalar sigma = neighbourhood_width(epoch);
    for (int j = 0; j < neurons(); ++j) {
      const auto d = static_cast<Scalar>(j - bmu);
      const Scalar h = std::exp(-(d * d) / (Scalar(2) * sigma * sigma));
      weights_.row(j) += alpha * h * (x - weights_.row(j));
    }
    return bmu;
  }

  template <typename Derived>
  void train(const Eigen::MatrixBase<Derived>& points) {
    for (int t = 0; t < options_.epochs; ++t) {
      for (Eigen::Index i = 0; i < points.rows(); ++i) update(points.row(i), t);
    }
  }

  int neurons() const { return static_cast<int>(weights_.rows()); }
  const PointMatrix<Scalar>& weights() const { return weights_; }

 private:
  PointMatrix<Scalar> weights_;
  SomOptions options_;
};

template <typename Derived>
ClusteringResult<typename Derived::Scalar> train_som(const Eigen::MatrixBase<Derived>& points, int neurons,
                                                     std::uint64_t seed, SomOptions options = {}) {
  using Scalar = typename Derived::Scalar;
  if (neurons <= 0) throw Error(ErrorCode::InvalidArgument, "SOM needs m >= 1, got m=" + std::to_string(neurons));
  if (points.rows() == 0) throw Error(ErrorCode::InvalidArgument, "SOM needs at least one input vector");

  SelfOrganizingMap<Scalar> som(neurons, points.cols(), seed, options);
  som.train(points);

  ClusteringResult<Scalar> result;
  result.algorithm = ClusterAlgorithm::Som;
  result.k_requested = neurons;
  result.seed = seed;
  result.assignments.resize(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    result.assignments[static_cast<std::size_t>(i)] = som.best_matching_unit(points.row(i));
  }
  detail::compact_and_average(points, result.assignments, result.centroids);
  return result;
}

// Mean silhouette with singleton points scored 0. Needs >= 2 non-empty
// clusters; throws Error(UndefinedScore) otherwise.
template <typename Derived>
typename Derived::Scalar silhouette_score(const Eigen::MatrixBase<Derived>& points, const std::vector<int>& labels) {
  using Scalar = typename Derived::Scalar;
  const auto n = points.rows();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw Error(ErrorCode::InvalidArgument, "silhouette: every point needs exactly one label");
  }
  const int clusters = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<int> sizes(static_cast<std::size_t>(std::max(clusters, 0)), 0);
  for (int l : labels) {
    if (l < 0) throw Error(ErrorCode::InvalidArgument, "silhouette: negative cluster id");
    ++sizes[static_cast<std::size_t>(l)];
  }
  const auto non_empty = std::count_if(sizes.begin(), sizes.end(), [](int s) { return s > 0; });
  if (n < 2 || non_empty < 2) {
    throw Error(ErrorCode::UndefinedScore, "silhouette needs at least 2 non-empty clusters");
  }

  Scalar total(0);
  std::vector<Scalar> dist_sum(sizes.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const int own = labels[static_cast<std::size_t>(i)];
    if (sizes[static_cast<std::size_t>(own)] == 1) continue;
    std::fill(dist_sum.begin(), dist_sum.end(), Scalar(0));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      dist_sum[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])] += (points.row(i) - points.row(j)).norm();
    }
    const Scalar a = dist_sum[static_cast<std::size_t>(own)] / Scalar(sizes[static_cast<std::size_t>(own)] - 1);
    Scalar b = std::numeric_limits<Scalar>::infinity();
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (static_cast<int>(c) == own || sizes[c] == 0) continue;
      b = std::min(b, dist_sum[c] / Scalar(sizes[c]));
    }
    const Scalar denom = std::max(a, b);
    if (denom > Scalar(0)) total += (b - a) / denom;
  }
  return total / Scalar(n);
}

template <typename Derived>
ClusteringResult<typename Derived::Scalar> run_clustering(const Eigen::MatrixBase<Derived>& points,
                                                          ClusterAlgorithm algorithm, int size,
                                                          std::uint64_t seed, SomOptions som = {}) {
  return algorithm == ClusterAlgorithm::KMeans ? run_kmeans(points, size, seed)
                                               : train_som(points, size, seed, som);
}

// Runs every candidate size with 2 <= size < n under seed + size and keeps
// the highest silhouette; ties go to the smaller size. Candidates run
// concurrently; the result does not depend on scheduling.
template <typename Derived>
SweepResult<typename Derived::Scalar> select_best_clustering(const Eigen::MatrixBase<Derived>& points,
                                                             const std::vector<int>& sizes,
                                                             ClusterAlgorithm algorithm, std::uint64_t seed,
                                                             SomOptions som = {}) {
  using Scalar = typename Derived::Scalar;
  if (sizes.empty()) throw Error(ErrorCode::InvalidArgument, "cluster size list is empty");
  const auto n = static_cast<int>(points.rows());

  std::vector<int> surviving;
  for (int s : sizes) {
    if (s >= 2 && s < n) surviving.push_back(s);
  }
  if (surviving.empty()) {
    throw Error(ErrorCode::NoValidSize, "no candidate cluster size satisfies 2 <= size < " + std::to_string(n) +
                                            "; supply smaller --cluster-sizes");
  }

  const PointMatrix<Scalar> data = points;
  std::vector<std::future<ClusteringResult<Scalar>>> jobs;
  jobs.reserve(surviving.size());
  for (int s : surviving) {
    jobs.push_back(std::async(std::launch::async, [&data, algorithm, s, seed, som] {
      auto r = run_clustering(data, algorithm, s, seed + static_cast<std::uint64_t>(s), som);
      if (r.cluster_count() >= 2) r.silhouette = silhouette_score(data, r.assignments);
      return r;
    }));
  }

  SweepResult<Scalar> out;
  std::optional<std::size_t> best;
  std::vector<ClusteringResult<Scalar>> results;
  results.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    results.push_back(jobs[i].get());
    const auto& r = results.back();
    out.series.push_back({surviving[i], r.silhouette});
    if (!r.silhouette) continue;
    if (!best || *r.silhouette > *results[*best].silhouette ||
        (*r.silhouette == *results[*best].silhouette && surviving[i] < surviving[*best])) {
      best = i;
    }
  }
  if (!best) {
    throw Error(ErrorCode::NoValidSize, "every candidate size produced fewer than 2 non-empty clusters");
  }
  out.best = std::move(results[*best]);
  return out;
}

}  // namespace schemamatch
