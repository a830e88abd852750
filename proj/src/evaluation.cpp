#include "schemamatch/evaluation.hpp"

#include <cctype>

#include "schemamatch/csv.hpp"
#include "schemamatch/error.hpp"

namespace schemamatch {

namespace {

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

OneToManyRecord parse_otm_line(std::string_view line, std::size_t line_no) {
  const auto semi = line.find(';');
  if (semi == std::string_view::npos) {
    throw Error(ErrorCode::Parse, "gold line " + std::to_string(line_no) + ": expected key;comp1,comp2,...");
  }
  OneToManyRecord rec{trimmed(line.substr(0, semi)), {}};
  std::string_view rest = line.substr(semi + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    auto pos = rest.find(',', start);
    if (pos == std::string_view::npos) pos = rest.size();
    auto comp = trimmed(rest.substr(start, pos - start));
    if (!comp.empty()) rec.components.insert(std::move(comp));
    start = pos + 1;
  }
  if (rec.key.empty() || rec.components.size() < 2) {
    throw Error(ErrorCode::Parse,
                "gold line " + std::to_string(line_no) + ": one-to-many record needs a key and >= 2 components");
  }
  return rec;
}

}  // namespace

EvalReport metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  EvalReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  const auto t = static_cast<double>(tp);
  r.precision = tp + fp == 0 ? 0.0 : t / static_cast<double>(tp + fp);
  r.recall = tp + fn == 0 ? 0.0 : t / static_cast<double>(tp + fn);
  r.f1 = r.precision + r.recall == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

GoldMapping parse_gold(std::string_view content) {
  std::string_view pairs_part = content;
  std::string_view otm_part;
  std::size_t otm_first_line = 0;

  // Locate an `[OTM]` line; everything before it is CSV.
  std::size_t start = 0, line_no = 0;
  while (start < content.size()) {
    auto pos = content.find('\n', start);
    if (pos == std::string_view::npos) pos = content.size();
    ++line_no;
    if (trimmed(content.substr(start, pos - start)) == "[OTM]") {
      pairs_part = content.substr(0, start);
      otm_part = pos < content.size() ? content.substr(pos + 1) : std::string_view{};
      otm_first_line = line_no + 1;
      break;
    }
    start = pos + 1;
  }

  GoldMapping gold;
  const auto rows = parse_csv(pairs_part);
  if (rows.empty() || rows[0].size() != 2 || trimmed(rows[0][0]) != "source" || trimmed(rows[0][1]) != "test") {
    throw Error(ErrorCode::Parse, "gold file must start with the header 'source,test'");
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) {
      throw Error(ErrorCode::Parse, "gold record " + std::to_string(r) + " needs exactly 2 fields");
    }
    if (!gold.pairs.emplace(trimmed(rows[r][0]), trimmed(rows[r][1])).second) {
      throw Error(ErrorCode::Parse, "gold record " + std::to_string(r) + " duplicates an earlier pair");
    }
  }

  if (otm_first_line != 0) {
    gold.otm.emplace();
    std::size_t s = 0, n = otm_first_line;
    while (s < otm_part.size()) {
      auto pos = otm_part.find('\n', s);
      if (pos == std::string_view::npos) pos = otm_part.size();
      const auto line = trimmed(otm_part.substr(s, pos - s));
      if (!line.empty() && line.front() != '#') gold.otm->insert(parse_otm_line(line, n));
      s = pos + 1;
      ++n;
    }
  }
  return gold;
}

EvalReport evaluate_one_to_one(const std::vector<OneToOneMatch>& predicted, const GoldMapping& gold) {
  std::set<std::string> seen_tests;
  std::set<std::pair<std::string, std::string>> returned;
  for (const auto& m : predicted) {
    if (!seen_tests.insert(m.test_attribute).second) {
      throw Error(ErrorCode::MalformedPrediction, "test attribute '" + m.test_attribute + "' is predicted twice");
    }
    if (m.source_attribute) returned.emplace(*m.source_attribute, m.test_attribute);
  }

  std::size_t tp = 0;
  for (const auto& p : returned) tp += gold.pairs.count(p);
  return metrics_from_counts(tp, returned.size() - tp, gold.pairs.size() - tp);
}

EvalReport evaluate(const std::vector<OneToOneMatch>& predicted, const std::vector<OneToManyMatch>& otm,
                    const GoldMapping& gold) {
  EvalReport report = evaluate_one_to_one(predicted, gold);
  if (gold.otm) {
    std::set<OneToManyRecord> found;
    for (const auto& m : otm) {
      OneToManyRecord rec{m.key_attribute, {}};
      for (const auto& c : m.components) rec.components.insert(c.attribute);
      found.insert(std::move(rec));
    }
    report.otm_exact = found == *gold.otm;
  }
  return report;
}

}  // namespace schemamatch
