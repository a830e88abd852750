#include "schemamatch/dictionary.hpp"

#include <cctype>
#include <optional>

#include "schemamatch/error.hpp"

namespace schemamatch {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "dictionary line " + std::to_string(line) + ": " + what);
}

std::set<std::string> parse_alias_list(std::string_view list, std::size_t line) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto pos = list.find(',', start);
    if (pos == std::string_view::npos) pos = list.size();
    const auto alias = trim(list.substr(start, pos - start));
    if (alias.empty()) fail(line, "empty alias in list");
    try {
      out.insert(canonical_alias(alias));
    } catch (const Error& e) {
      fail(line, e.what());
    }
    start = pos + 1;
  }
  return out;
}

void validate(const DictionaryEntry& entry, std::size_t line) {
  const std::string where = "entry '" + entry.id + "'";
  if (entry.key_aliases.empty()) fail(line, where + " has no KEYS line");
  if (entry.groups.size() < 2) fail(line, where + " needs at least 2 GROUP lines");
  for (const auto& g : entry.groups) {
    for (const auto& a : g.aliases) {
      if (entry.key_aliases.count(a)) {
        fail(line, where + ": alias '" + a + "' appears in KEYS and in group '" + g.name + "'");
      }
    }
  }
}

std::string strip_role_prefix(std::string_view lowered) {
  if (lowered.starts_with("tr_") || lowered.starts_with("ts_")) lowered.remove_prefix(3);
  return std::string(lowered);
}

void match_direction(const std::vector<AttributeSpec>& keys_side, const std::vector<AttributeSpec>& parts_side,
                     const std::vector<DictionaryEntry>& dictionary, std::set<std::string>& consumed_keys,
                     std::set<std::string>& consumed_parts, std::vector<OneToManyMatch>& out) {
  std::vector<std::string> key_canon, part_canon;
  for (const auto& a : keys_side) key_canon.push_back(canonical_alias(a.name));
  for (const auto& a : parts_side) part_canon.push_back(canonical_alias(a.name));

  for (const auto& entry : dictionary) {
    for (std::size_t k = 0; k < keys_side.size(); ++k) {
      if (consumed_keys.count(keys_side[k].name) || !entry.key_aliases.count(key_canon[k])) continue;

      OneToManyMatch match;
      match.entry_id = entry.id;
      match.key_attribute = keys_side[k].name;
      std::set<std::string> picked;
      for (const auto& group : entry.groups) {
        for (std::size_t p = 0; p < parts_side.size(); ++p) {
          const auto& name = parts_side[p].name;
          if (consumed_parts.count(name) || picked.count(name) || !group.aliases.count(part_canon[p])) continue;
          picked.insert(name);
          match.components.push_back({name, group.name});
          break;
        }
      }
      if (match.components.size() < 2) continue;
      consumed_keys.insert(match.key_attribute);
      consumed_parts.insert(picked.begin(), picked.end());
      out.push_back(std::move(match));
    }
  }
}

}  // namespace

std::string canonical_alias(std::string_view s) {
  std::string lowered;
  lowered.reserve(s.size());
  for (char c : s) lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  std::string out;
  for (char c : strip_role_prefix(lowered)) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(c);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidAlias, "alias '" + std::string(s) + "' has no alphanumeric characters");
  return out;
}

std::vector<DictionaryEntry> parse_dictionary(std::string_view content) {
  std::vector<DictionaryEntry> entries;
  std::optional<DictionaryEntry> current;
  std::size_t entry_line = 0;
  std::set<std::string> ids;

  auto close = [&] {
    if (!current) return;
    validate(*current, entry_line);
    entries.push_back(std::move(*current));
    current.reset();
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    auto pos = content.find('\n', start);
    if (pos == std::string_view::npos) pos = content.size();
    std::string_view line = content.substr(start, pos - start);
    start = pos + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = trim(line);

    if (line.empty()) {
      close();
      continue;
    }
    if (line.front() == '#') continue;

    if (line.starts_with("ENTRY ")) {
      close();
      const auto id = trim(line.substr(6));
      if (id.empty()) fail(line_no, "ENTRY needs an id");
      if (!ids.insert(std::string(id)).second) fail(line_no, "duplicate entry id '" + std::string(id) + "'");
      current = DictionaryEntry{std::string(id), {}, {}};
      entry_line = line_no;
    } else if (line.starts_with("KEYS:")) {
      if (!current) fail(line_no, "KEYS outside an ENTRY");
      if (!current->key_aliases.empty()) fail(line_no, "second KEYS line in entry '" + current->id + "'");
      current->key_aliases = parse_alias_list(line.substr(5), line_no);
    } else if (line.starts_with("GROUP ")) {
      if (!current) fail(line_no, "GROUP outside an ENTRY");
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) fail(line_no, "GROUP needs 'GROUP <name>: aliases'");
      const auto name = trim(line.substr(6, colon - 6));
      if (name.empty()) fail(line_no, "GROUP needs a name");
      for (const auto& g : current->groups) {
        if (g.name == name) fail(line_no, "duplicate group '" + std::string(name) + "'");
      }
      current->groups.push_back({std::string(name), parse_alias_list(line.substr(colon + 1), line_no)});
    } else {
      fail(line_no, "unrecognized line '" + std::string(line) + "'");
    }
  }
  close();
  return entries;
}

OneToManyResult find_one_to_many_matches(const std::vector<AttributeSpec>& source,
                                         const std::vector<AttributeSpec>& test,
                                         const std::vector<DictionaryEntry>& dictionary, bool both_directions) {
  OneToManyResult result;
  match_direction(source, test, dictionary, result.consumed_source, result.consumed_test, result.matches);
  if (both_directions) {
    match_direction(test, source, dictionary, result.consumed_test, result.consumed_source, result.matches);
  }
  return result;
}

}  // namespace schemamatch
