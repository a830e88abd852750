#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "schemamatch/ingest.hpp"

namespace schemamatch {

inline constexpr int kFeatureCount = 20;

// Component order of every feature vector and of the feature CSV columns.
enum Feature : int {
  TypeOfData,
  Length,
  Key,
  Unique,
  NotNull,
  AvgUsedLength,
  VarUsedLength,
  CoeffVarUsedLength,
  Average,
  Variance,
  CoeffOfVariance,
  Minimum,
  Maximum,
  RatioWhitespace,
  RatioSpecial,
  RatioNumeric,
  RatioChar,
  RatioBackslash,
  RatioBrackets,
  RatioHyphens,
};

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "type_of_data",     "length",          "key",          "unique",
    "not_null",         "avg_used_length", "var_used_length", "coeff_var_used_length",
    "average",          "variance",        "coeff_of_variance", "minimum",
    "maximum",          "ratio_whitespace", "ratio_special", "ratio_numeric",
    "ratio_char",       "ratio_backslash", "ratio_brackets", "ratio_hyphens",
};

template <typename Scalar>
using FeatureArray = Eigen::Matrix<Scalar, kFeatureCount, 1>;

// Rows are attributes, columns are the 20 features.
template <typename Scalar>
using FeatureMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, kFeatureCount, Eigen::RowMajor>;

struct FeatureVector {
  std::string owner;
  FeatureArray<double> values = FeatureArray<double>::Zero();
  bool normalized = false;

  double operator[](Feature f) const { return values[f]; }
};

// Raw discriminators for one attribute. `values` must already be cleaned;
// an absent declared length is resolved with default_declared_length.
FeatureVector extract_raw_features(const AttributeSpec& spec, const std::vector<std::string>& values);

// Raw vectors for every attribute of a table, in schema order.
std::vector<FeatureVector> extract_table_features(const TableData& table);

// Joint min-max scaling of each component over all vectors; constant
// components map to 0. Throws Error(EmptyInput) on an empty list.
std::vector<FeatureVector> normalize_feature_matrix(const std::vector<FeatureVector>& vectors);

FeatureMatrix<double> stack_features(const std::vector<FeatureVector>& vectors);

}  // namespace schemamatch
