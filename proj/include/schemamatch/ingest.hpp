#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace schemamatch {

enum class DataKind { Float, Int, Char, Varchar, Boolean, Date, Time };

// Feature encoding of a column type. Varchar shares code 2 with Char.
constexpr int type_code(DataKind kind) noexcept {
  switch (kind) {
    case DataKind::Float: return 0;
    case DataKind::Int: return 1;
    case DataKind::Char:
    case DataKind::Varchar: return 2;
    case DataKind::Boolean: return 3;
    case DataKind::Date: return 4;
    case DataKind::Time: return 5;
  }
  return -1;
}

constexpr bool is_numeric(DataKind kind) noexcept {
  return kind == DataKind::Int || kind == DataKind::Float;
}

const char* to_string(DataKind kind) noexcept;

// Accepts the schema-spec keywords FLOAT, INT, ... (case-insensitive).
std::optional<DataKind> parse_data_kind(std::string_view keyword);

enum class SchemaRole { Source, Test };

constexpr std::string_view role_prefix(SchemaRole role) noexcept {
  return role == SchemaRole::Source ? "tr_" : "ts_";
}

struct AttributeSpec {
  std::string name;      // normalized, carries the tr_/ts_ prefix
  std::string raw_name;  // as written in the schema spec
  DataKind kind = DataKind::Char;
  std::optional<int> declared_length;
  bool is_key = false;
  bool is_unique = false;  // only set for an explicit UNIQUE on a non-key column
  bool not_null = false;

  int type_code() const noexcept { return schemamatch::type_code(kind); }
};

struct TableData {
  std::vector<AttributeSpec> schema;
  std::vector<std::vector<std::string>> columns;  // columns[attribute][row]
  std::size_t row_count = 0;
};

// prefix + raw lowercased, '%' spelled "percent", whitespace runs collapsed
// to '_', and leading/trailing '_' stripped. Throws Error(InvalidName).
std::string normalize_attribute_name(std::string_view raw, std::string_view prefix);

// Parses the `NAME|TYPE|LENGTH|FLAGS` format. Errors carry the 1-based line.
std::vector<AttributeSpec> parse_schema_spec(std::string_view content, SchemaRole role);

// Strict numeric parse used for Int/Float columns: optional surrounding ASCII
// whitespace, optional sign, finite decimal or exponent form.
std::optional<double> parse_number(std::string_view text);

// Removes every '%'. Int/Float values that still do not parse become "0".
std::vector<std::string> clean_column_values(const std::vector<std::string>& raw_values,
                                             DataKind kind);

// Length substituted for an absent declared length: longest cleaned value,
// at least 1.
int default_declared_length(const std::vector<std::string>& cleaned_values);

// Binds a parsed schema to CSV content (header row + records). Values are
// cleaned and every absent declared length is resolved.
TableData load_table(std::vector<AttributeSpec> schema, std::string_view csv_content);

}  // namespace schemamatch
