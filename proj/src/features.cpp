#include "schemamatch/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "schemamatch/error.hpp"

namespace schemamatch {

namespace {

// Single-pass mean / population variance.
class RunningMoments {
 public:
  void push(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const { return count_ == 0 ? 0.0 : m2_ / static_cast<double>(count_); }

  // stddev / |mean|, 0 when the mean is 0.
  double coefficient_of_variation() const {
    return mean_ == 0.0 ? 0.0 : std::sqrt(variance()) / std::abs(mean_);
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

bool is_bracket(char c) {
  return c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}';
}

void fill_numeric_block(FeatureArray<double>& out, const std::vector<std::string>& values) {
  RunningMoments moments;
  double lo = 0.0, hi = 0.0;
  for (const auto& v : values) {
    const double x = parse_number(v).value_or(0.0);
    if (moments.count() == 0) {
      lo = hi = x;
    } else {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    moments.push(x);
  }
  out[Average] = moments.mean();
  out[Variance] = moments.variance();
  out[CoeffOfVariance] = moments.coefficient_of_variation();
  out[Minimum] = lo;
  out[Maximum] = hi;
}

void fill_character_block(FeatureArray<double>& out, const std::vector<std::string>& values) {
  Eigen::Matrix<double, 7, 1> sum = Eigen::Matrix<double, 7, 1>::Zero();
  std::size_t non_empty = 0;
  for (const auto& v : values) {
    if (v.empty()) continue;
    Eigen::Matrix<double, 7, 1> counts = Eigen::Matrix<double, 7, 1>::Zero();
    for (char ch : v) {
      const auto c = static_cast<unsigned char>(ch);
      const bool space = std::isspace(c) != 0;
      const bool alnum = std::isalnum(c) != 0;
      counts[0] += space;
      counts[1] += !space && !alnum;
      counts[2] += std::isdigit(c) != 0;
      counts[3] += std::isalpha(c) != 0;
      counts[4] += ch == '\\';
      counts[5] += is_bracket(ch);
      counts[6] += ch == '-';
    }
    sum += counts / static_cast<double>(v.size());
    ++non_empty;
  }
  if (non_empty > 0) out.segment<7>(RatioWhitespace) = sum / static_cast<double>(non_empty);
}

}  // namespace

FeatureVector extract_raw_features(const AttributeSpec& spec, const std::vector<std::string>& values) {
  FeatureVector fv;
  fv.owner = spec.name;
  auto& out = fv.values;

  const int declared = spec.declared_length.value_or(default_declared_length(values));
  out[TypeOfData] = spec.type_code();
  out[Length] = declared;
  out[Key] = spec.is_key ? 1.0 : 0.0;
  out[Unique] = spec.is_unique ? 1.0 : 0.0;
  out[NotNull] = spec.not_null ? 1.0 : 0.0;

  if (values.empty()) return fv;

  RunningMoments used;
  for (const auto& v : values) {
    // Values longer than the declared width count as fully used.
    used.push(std::min(1.0, static_cast<double>(v.size()) / declared));
  }
  out[AvgUsedLength] = used.mean();
  out[VarUsedLength] = used.variance();
  out[CoeffVarUsedLength] = used.coefficient_of_variation();

  if (is_numeric(spec.kind)) {
    fill_numeric_block(out, values);
  } else {
    fill_character_block(out, values);
  }
  return fv;
}

std::vector<FeatureVector> extract_table_features(const TableData& table) {
  std::vector<FeatureVector> out;
  out.reserve(table.schema.size());
  for (std::size_t i = 0; i < table.schema.size(); ++i) {
    out.push_back(extract_raw_features(table.schema[i], table.columns[i]));
  }
  return out;
}

FeatureMatrix<double> stack_features(const std::vector<FeatureVector>& vectors) {
  FeatureMatrix<double> m(static_cast<Eigen::Index>(vectors.size()), kFeatureCount);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = vectors[i].values.transpose();
  }
  return m;
}

std::vector<FeatureVector> normalize_feature_matrix(const std::vector<FeatureVector>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::EmptyInput, "cannot normalize an empty feature list");

  const FeatureMatrix<double> raw = stack_features(vectors);
  const FeatureArray<double> lo = raw.colwise().minCoeff().transpose();
  const FeatureArray<double> range = raw.colwise().maxCoeff().transpose() - lo;

  std::vector<FeatureVector> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    FeatureVector fv;
    fv.owner = vectors[i].owner;
    fv.normalized = true;
    for (int f = 0; f < kFeatureCount; ++f) {
      fv.values[f] = range[f] > 0.0 ? (vectors[i].values[f] - lo[f]) / range[f] : 0.0;
    }
    out.push_back(std::move(fv));
  }
  return out;
}

}  // namespace schemamatch
