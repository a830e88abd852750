#include "schemamatch/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "schemamatch/csv.hpp"
#include "schemamatch/error.hpp"

namespace schemamatch {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void fail_line(ErrorCode code, std::size_t line, const std::string& what) {
  throw Error(code, "schema line " + std::to_string(line) + ": " + what);
}

}  // namespace

const char* to_string(DataKind kind) noexcept {
  switch (kind) {
    case DataKind::Float: return "FLOAT";
    case DataKind::Int: return "INT";
    case DataKind::Char: return "CHAR";
    case DataKind::Varchar: return "VARCHAR";
    case DataKind::Boolean: return "BOOLEAN";
    case DataKind::Date: return "DATE";
    case DataKind::Time: return "TIME";
  }
  return "?";
}

std::optional<DataKind> parse_data_kind(std::string_view keyword) {
  const std::string key = upper(trim(keyword));
  if (key == "FLOAT") return DataKind::Float;
  if (key == "INT") return DataKind::Int;
  if (key == "CHAR") return DataKind::Char;
  if (key == "VARCHAR") return DataKind::Varchar;
  if (key == "BOOLEAN") return DataKind::Boolean;
  if (key == "DATE") return DataKind::Date;
  if (key == "TIME") return DataKind::Time;
  return std::nullopt;
}

std::string normalize_attribute_name(std::string_view raw, std::string_view prefix) {
  if (prefix != "tr_" && prefix != "ts_") {
    throw Error(ErrorCode::InvalidName, "prefix must be tr_ or ts_, got '" + std::string(prefix) + "'");
  }
  std::string body;
  bool in_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      in_space = true;
      continue;
    }
    if (in_space) {
      body.push_back('_');
      in_space = false;
    }
    if (c == '%') {
      body += "percent";
    } else {
      body.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  const auto first = body.find_first_not_of('_');
  if (first == std::string::npos) {
    throw Error(ErrorCode::InvalidName, "attribute name '" + std::string(raw) + "' is empty after normalization");
  }
  const auto last = body.find_last_not_of('_');
  return std::string(prefix) + body.substr(first, last - first + 1);
}

std::vector<AttributeSpec> parse_schema_spec(std::string_view content, SchemaRole role) {
  std::vector<AttributeSpec> schema;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string_view line : split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    const auto fields = split(body, '|');
    if (fields.size() != 4) {
      fail_line(ErrorCode::Parse, line_no,
                "expected NAME|TYPE|LENGTH|FLAGS, got " + std::to_string(fields.size()) + " field(s)");
    }

    AttributeSpec spec;
    spec.raw_name = std::string(trim(fields[0]));
    if (spec.raw_name.empty()) fail_line(ErrorCode::Parse, line_no, "field NAME is empty");
    try {
      spec.name = normalize_attribute_name(spec.raw_name, role_prefix(role));
    } catch (const Error& e) {
      fail_line(ErrorCode::InvalidName, line_no, e.what());
    }

    const auto kind = parse_data_kind(fields[1]);
    if (!kind) {
      fail_line(ErrorCode::UnsupportedType, line_no,
                "unsupported type '" + std::string(trim(fields[1])) + "'");
    }
    spec.kind = *kind;

    const std::string_view length = trim(fields[2]);
    if (length != "-") {
      int value = 0;
      const auto [ptr, ec] = std::from_chars(length.data(), length.data() + length.size(), value);
      if (ec != std::errc{} || ptr != length.data() + length.size() || value <= 0) {
        fail_line(ErrorCode::Parse, line_no,
                  "field LENGTH must be a positive integer or '-', got '" + std::string(length) + "'");
      }
      spec.declared_length = value;
    }

    const std::string_view flags = trim(fields[3]);
    bool unique = false;
    if (flags != "-") {
      for (std::string_view flag : split(flags, ',')) {
        const std::string f = upper(trim(flag));
        if (f == "KEY") {
          spec.is_key = true;
        } else if (f == "UNIQUE") {
          unique = true;
        } else if (f == "NOTNULL") {
          spec.not_null = true;
        } else {
          fail_line(ErrorCode::Parse, line_no, "field FLAGS has unknown flag '" + f + "'");
        }
      }
    }
    spec.is_unique = unique && !spec.is_key;

    if (!seen.insert(spec.name).second) {
      fail_line(ErrorCode::DuplicateAttribute, line_no, "duplicate attribute '" + spec.name + "'");
    }
    schema.push_back(std::move(spec));
  }
  return schema;
}

std::optional<double> parse_number(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  // from_chars also accepts "inf"/"nan"; only plain decimal forms count.
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != 'e' && c != 'E' && c != '+') {
      return std::nullopt;
    }
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<std::string> clean_column_values(const std::vector<std::string>& raw_values, DataKind kind) {
  std::vector<std::string> cleaned;
  cleaned.reserve(raw_values.size());
  for (const auto& raw : raw_values) {
    std::string value;
    value.reserve(raw.size());
    std::copy_if(raw.begin(), raw.end(), std::back_inserter(value), [](char c) { return c != '%'; });
    if (is_numeric(kind) && !parse_number(value)) value = "0";
    cleaned.push_back(std::move(value));
  }
  return cleaned;
}

int default_declared_length(const std::vector<std::string>& cleaned_values) {
  std::size_t longest = 1;
  for (const auto& v : cleaned_values) longest = std::max(longest, v.size());
  return static_cast<int>(longest);
}

TableData load_table(std::vector<AttributeSpec> schema, std::string_view csv_content) {
  auto rows = parse_csv(csv_content);
  if (rows.empty()) throw Error(ErrorCode::Parse, "data file has no header row");
  if (rows.front().size() != schema.size()) {
    throw Error(ErrorCode::Parse, "data header has " + std::to_string(rows.front().size()) +
                                      " column(s) but the schema declares " + std::to_string(schema.size()));
  }

  TableData table;
  table.row_count = rows.size() - 1;
  std::vector<std::vector<std::string>> raw(schema.size());
  for (auto& column : raw) column.reserve(table.row_count);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != schema.size()) {
      throw Error(ErrorCode::Parse, "data record " + std::to_string(r) + " has " +
                                        std::to_string(rows[r].size()) + " field(s), expected " +
                                        std::to_string(schema.size()));
    }
    for (std::size_t c = 0; c < schema.size(); ++c) raw[c].push_back(std::move(rows[r][c]));
  }

  table.columns.reserve(schema.size());
  for (std::size_t c = 0; c < schema.size(); ++c) {
    auto cleaned = clean_column_values(raw[c], schema[c].kind);
    if (!schema[c].declared_length) schema[c].declared_length = default_declared_length(cleaned);
    table.columns.push_back(std::move(cleaned));
  }
  table.schema = std::move(schema);
  return table;
}

}  // namespace schemamatch
