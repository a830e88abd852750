#include "schemamatch/csv.hpp"

#include <fstream>
#include <sstream>

#include "schemamatch/error.hpp"

namespace schemamatch {

std::vector<CsvRow> parse_csv(std::string_view content) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool after_quote = false;
  bool row_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    after_quote = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    row_started = false;
  };

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || after_quote) {
          throw Error(ErrorCode::Parse,
                      "csv line " + std::to_string(line) + ": unexpected quote inside field");
        }
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        row_started = true;
        end_field();
        break;
      case '\r':
        if (i + 1 < content.size() && content[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        // Blank lines are skipped; an empty single-column value must be quoted.
        if (row_started || !row.empty()) end_row();
        ++line;
        break;
      default:
        if (after_quote) {
          throw Error(ErrorCode::Parse,
                      "csv line " + std::to_string(line) + ": characters after closing quote");
        }
        row_started = true;
        field.push_back(c);
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::Parse, "csv line " + std::to_string(line) + ": unterminated quote");
  }
  if (row_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace schemamatch
