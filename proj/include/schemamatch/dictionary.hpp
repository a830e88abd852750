#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "schemamatch/ingest.hpp"

namespace schemamatch {

struct ComponentGroup {
  std::string name;
  std::set<std::string> aliases;  // canonical
};

// A decomposable key and the component groups that together express it.
struct DictionaryEntry {
  std::string id;
  std::set<std::string> key_aliases;  // canonical
  std::vector<ComponentGroup> groups;
};

struct ComponentMatch {
  std::string attribute;
  std::string group;
};

struct OneToManyMatch {
  std::string entry_id;
  std::string key_attribute;
  std::vector<ComponentMatch> components;  // one per satisfied group, >= 2
};

struct OneToManyResult {
  std::vector<OneToManyMatch> matches;
  std::set<std::string> consumed_source;
  std::set<std::string> consumed_test;
};

// Lowercase, a leading "tr_"/"ts_" dropped, every non-alphanumeric removed.
// Throws Error(InvalidAlias) if nothing remains.
std::string canonical_alias(std::string_view s);

// Parses the ENTRY / KEYS: / GROUP <name>: format and validates every entry
// (>= 1 key alias, >= 2 non-empty groups, no alias shared by keys and groups).
std::vector<DictionaryEntry> parse_dictionary(std::string_view content);

// Keys are looked up in `source` and components in `test`, entries in file
// order. Each attribute joins at most one match. With `both_directions` the
// mirrored lookup (key in test, components in source) runs afterwards.
OneToManyResult find_one_to_many_matches(const std::vector<AttributeSpec>& source,
                                         const std::vector<AttributeSpec>& test,
                                         const std::vector<DictionaryEntry>& dictionary,
                                         bool both_directions = false);

}  // namespace schemamatch
