#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace schemamatch {

using CsvRow = std::vector<std::string>;

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line ends,
// line breaks inside quoted fields. Blank lines are not records.
// Throws Error(Parse) on an unterminated quote or stray characters after a
// closing quote.
std::vector<CsvRow> parse_csv(std::string_view content);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

std::string read_file(const std::string& path);

}  // namespace schemamatch
