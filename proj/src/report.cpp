#include "schemamatch/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "schemamatch/csv.hpp"
#include "schemamatch/error.hpp"

namespace schemamatch {

namespace {

constexpr std::string_view kReportHeader = "# schemamatch report v1";
constexpr std::string_view kOneToManyColumns = "entry\tkey\tcomponents";
constexpr std::string_view kOneToOneColumns = "method\tmeasure\tcluster_id\ttest\tsource\tsimilarity";
constexpr std::string_view kMetricsColumns = "tp\tfp\tfn\tprecision\trecall\tf1";

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "report line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string format_report(const MatchReport& report, const std::optional<EvalReport>& eval) {
  std::ostringstream out;
  out << kReportHeader << '\n';

  if (!report.one_to_many.empty()) {
    out << "[one-to-many]\n" << kOneToManyColumns << '\n';
    for (const auto& m : report.one_to_many) {
      out << m.entry_id << '\t' << m.key_attribute << '\t';
      for (std::size_t i = 0; i < m.components.size(); ++i) {
        out << (i ? "," : "") << m.components[i].attribute << ':' << m.components[i].group;
      }
      out << '\n';
    }
  }

  if (!report.one_to_one.empty()) {
    out << "[one-to-one]\n" << kOneToOneColumns << '\n';
    for (const auto& m : report.one_to_one) {
      out << to_string(m.method) << '\t' << to_string(m.measure) << '\t' << m.cluster_id << '\t'
          << m.test_attribute << '\t' << m.source_attribute.value_or("NONE") << '\t'
          << (m.similarity ? format_fixed(*m.similarity, 6) : std::string("NONE")) << '\n';
    }
  }

  if (eval) out << "[metrics]\n" << format_metrics(*eval);
  return out.str();
}

std::string format_metrics(const EvalReport& eval) {
  std::ostringstream out;
  out << kMetricsColumns << '\n'
      << eval.tp << '\t' << eval.fp << '\t' << eval.fn << '\t' << format_fixed(eval.precision, 3) << '\t'
      << format_fixed(eval.recall, 3) << '\t' << format_fixed(eval.f1, 3) << '\n';
  if (eval.otm_exact) out << "otm\t" << (*eval.otm_exact ? "exact" : "mismatch") << '\n';
  return out.str();
}

void emit_report(const MatchReport& report, const std::optional<EvalReport>& eval, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot write report to '" + path + "'");
  file << format_report(report, eval);
  if (!file.flush()) throw Error(ErrorCode::Io, "failed writing report to '" + path + "'");
}

MatchReport parse_report(std::string_view content) {
  enum class Section { None, OneToMany, OneToOne, Metrics } section = Section::None;
  MatchReport report;
  const auto lines = split(content, '\n');
  if (lines.empty() || lines[0] != kReportHeader) fail(1, "missing report header");

  for (std::size_t n = 1; n < lines.size(); ++n) {
    std::string line = lines[n];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t line_no = n + 1;

    if (line == "[one-to-many]" || line == "[one-to-one]" || line == "[metrics]") {
      section = line == "[one-to-many]" ? Section::OneToMany
                : line == "[one-to-one]" ? Section::OneToOne
                                         : Section::Metrics;
      ++n;  // column header
      continue;
    }

    const auto f = split(line, '\t');
    switch (section) {
      case Section::None:
        fail(line_no, "record outside a section");
      case Section::OneToMany: {
        if (f.size() != 3) fail(line_no, "one-to-many record needs 3 fields");
        OneToManyMatch m{f[0], f[1], {}};
        for (const auto& comp : split(f[2], ',')) {
          const auto colon = comp.rfind(':');
          if (colon == std::string::npos) fail(line_no, "component needs attribute:group");
          m.components.push_back({comp.substr(0, colon), comp.substr(colon + 1)});
        }
        report.one_to_many.push_back(std::move(m));
        break;
      }
      case Section::OneToOne: {
        if (f.size() != 6) fail(line_no, "one-to-one record needs 6 fields");
        const auto method = parse_method(f[0]);
        const auto measure = parse_measure(f[1]);
        if (!method || !measure) fail(line_no, "unknown method or measure");
        OneToOneMatch m;
        m.method = *method;
        m.measure = *measure;
        try {
          m.cluster_id = std::stoi(f[2]);
          if (f[4] != "NONE") {
            m.source_attribute = f[4];
            m.similarity = std::stod(f[5]);
          }
        } catch (const std::exception&) {
          fail(line_no, "bad numeric field");
        }
        m.test_attribute = f[3];
        report.one_to_one.push_back(std::move(m));
        break;
      }
      case Section::Metrics:
        break;
    }
  }
  return report;
}

std::string format_feature_csv(const std::vector<FeatureVector>& vectors) {
  std::ostringstream out;
  out << "name";
  for (auto name : kFeatureNames) out << ',' << name;
  out << '\n';
  for (const auto& v : vectors) {
    out << csv_escape(v.owner);
    for (int f = 0; f < kFeatureCount; ++f) out << ',' << format_g17(v.values[f]);
    out << '\n';
  }
  return out.str();
}

std::vector<FeatureVector> parse_feature_csv(std::string_view content, bool normalized) {
  const auto rows = parse_csv(content);
  if (rows.empty() || rows[0].size() != kFeatureCount + 1 || rows[0][0] != "name") {
    throw Error(ErrorCode::Parse, "feature file needs a 'name' column plus the 20 feature columns");
  }
  for (int f = 0; f < kFeatureCount; ++f) {
    if (rows[0][static_cast<std::size_t>(f) + 1] != kFeatureNames[static_cast<std::size_t>(f)]) {
      throw Error(ErrorCode::Parse, "feature column " + std::to_string(f + 2) + " should be '" +
                                        std::string(kFeatureNames[static_cast<std::size_t>(f)]) + "'");
    }
  }
  std::vector<FeatureVector> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != kFeatureCount + 1) {
      throw Error(ErrorCode::Parse, "feature record " + std::to_string(r) + " has the wrong field count");
    }
    FeatureVector v;
    v.owner = rows[r][0];
    v.normalized = normalized;
    for (int f = 0; f < kFeatureCount; ++f) {
      const auto value = parse_number(rows[r][static_cast<std::size_t>(f) + 1]);
      if (!value) throw Error(ErrorCode::Parse, "feature record " + std::to_string(r) + " has a non-numeric value");
      v.values[f] = *value;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::string format_sweep_csv(const SweepResult<double>& sweep) {
  std::ostringstream out;
  out << "size,silhouette\n";
  for (const auto& p : sweep.series) {
    out << p.size << ',' << (p.silhouette ? format_fixed(*p.silhouette, 6) : std::string("NA")) << '\n';
  }
  out << "chosen," << sweep.best.k_requested << '\n';
  return out.str();
}

}  // namespace schemamatch
