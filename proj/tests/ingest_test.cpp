#include <gtest/gtest.h>

#include <random>

#include "schemamatch/csv.hpp"
#include "schemamatch/error.hpp"
#include "schemamatch/ingest.hpp"

using namespace schemamatch;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(NormalizeName, ReferenceExamples) {
  EXPECT_EQ(normalize_attribute_name("State", "ts_"), "ts_state");
  EXPECT_EQ(normalize_attribute_name("% Readmitted", "tr_"), "tr_percent_readmitted");
  EXPECT_EQ(normalize_attribute_name("HBIPS 2 Overall Num", "tr_"), "tr_hbips_2_overall_num");
}

TEST(NormalizeName, CollapsesWhitespaceAndTrimsUnderscores) {
  EXPECT_EQ(normalize_attribute_name("  Maj \t Stream  ", "tr_"), "tr_maj_stream");
  EXPECT_EQ(normalize_attribute_name("_id_", "ts_"), "ts_id");
  EXPECT_EQ(normalize_attribute_name("50%", "ts_"), "ts_50percent");
}

TEST(NormalizeName, RejectsEmptyResults) {
  EXPECT_EQ(code_of([] { normalize_attribute_name("", "tr_"); }), ErrorCode::InvalidName);
  EXPECT_EQ(code_of([] { normalize_attribute_name(" _ ", "tr_"); }), ErrorCode::InvalidName);
  EXPECT_EQ(code_of([] { normalize_attribute_name("x", "zz_"); }), ErrorCode::InvalidName);
}

TEST(NormalizeName, IdempotentOnRandomNames) {
  std::mt19937 gen(7);
  const std::string alphabet = "aB %_ 9\t-";
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw;
    const int len = 1 + static_cast<int>(gen() % 12);
    for (int i = 0; i < len; ++i) raw.push_back(alphabet[gen() % alphabet.size()]);
    std::string once;
    try {
      once = normalize_attribute_name(raw, "tr_");
    } catch (const Error&) {
      continue;
    }
    EXPECT_EQ(normalize_attribute_name(once.substr(3), "tr_"), once) << "raw='" << raw << "'";
  }
}

TEST(SchemaSpec, StateKeyColumn) {
  const auto schema = parse_schema_spec("State|CHAR|2|KEY,NOTNULL\n", SchemaRole::Test);
  ASSERT_EQ(schema.size(), 1u);
  const auto& s = schema[0];
  EXPECT_EQ(s.name, "ts_state");
  EXPECT_EQ(s.raw_name, "State");
  EXPECT_EQ(s.type_code(), 2);
  EXPECT_EQ(s.declared_length, 2);
  EXPECT_TRUE(s.is_key);
  EXPECT_FALSE(s.is_unique);
  EXPECT_TRUE(s.not_null);
}

TEST(SchemaSpec, CommentsBlankLinesAndOrder) {
  const auto schema = parse_schema_spec(
      "# comment\n\nB|INT|-|-\r\nA|VARCHAR|40|UNIQUE\nC|TIME|8|KEY,UNIQUE\n", SchemaRole::Source);
  ASSERT_EQ(schema.size(), 3u);
  EXPECT_EQ(schema[0].name, "tr_b");
  EXPECT_FALSE(schema[0].declared_length.has_value());
  EXPECT_EQ(schema[1].name, "tr_a");
  EXPECT_EQ(schema[1].kind, DataKind::Varchar);
  EXPECT_EQ(schema[1].type_code(), 2);
  EXPECT_TRUE(schema[1].is_unique);
  // UNIQUE on a key is implied, so it is not recorded.
  EXPECT_TRUE(schema[2].is_key);
  EXPECT_FALSE(schema[2].is_unique);
  EXPECT_EQ(schema[2].type_code(), 5);
}

TEST(SchemaSpec, EmptyContentIsEmptySchema) {
  EXPECT_TRUE(parse_schema_spec("", SchemaRole::Source).empty());
  EXPECT_TRUE(parse_schema_spec("# only a comment\n", SchemaRole::Source).empty());
}

TEST(SchemaSpec, Errors) {
  EXPECT_EQ(code_of([] { parse_schema_spec("Maj Stream|CHAR|4|-\nmaj_stream|CHAR|4|-\n", SchemaRole::Source); }),
            ErrorCode::DuplicateAttribute);
  EXPECT_EQ(code_of([] { parse_schema_spec("x|BLOB|4|-\n", SchemaRole::Source); }), ErrorCode::UnsupportedType);
  EXPECT_EQ(code_of([] { parse_schema_spec("x|INT|4\n", SchemaRole::Source); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_schema_spec("x|INT|0|-\n", SchemaRole::Source); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_schema_spec("x|INT|4|PRIMARY\n", SchemaRole::Source); }), ErrorCode::Parse);
}

TEST(SchemaSpec, ErrorNamesTheLine) {
  try {
    parse_schema_spec("a|INT|-|-\n\nb|INT|abc|-\n", SchemaRole::Source);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("LENGTH"), std::string::npos) << e.what();
  }
}

TEST(TypeCode, FixedMapping) {
  EXPECT_EQ(type_code(DataKind::Float), 0);
  EXPECT_EQ(type_code(DataKind::Int), 1);
  EXPECT_EQ(type_code(DataKind::Char), 2);
  EXPECT_EQ(type_code(DataKind::Varchar), 2);
  EXPECT_EQ(type_code(DataKind::Boolean), 3);
  EXPECT_EQ(type_code(DataKind::Date), 4);
  EXPECT_EQ(type_code(DataKind::Time), 5);
}

TEST(CleanValues, Examples) {
  using V = std::vector<std::string>;
  EXPECT_EQ(clean_column_values(V{"Not Available", "23.7"}, DataKind::Float), (V{"0", "23.7"}));
  EXPECT_EQ(clean_column_values(V{"85%"}, DataKind::Float), (V{"85"}));
  EXPECT_EQ(clean_column_values(V{"AL", "AR"}, DataKind::Char), (V{"AL", "AR"}));
  EXPECT_EQ(clean_column_values(V{"5%5", "", "inf", "1,234", "-2e3"}, DataKind::Int),
            (V{"55", "0", "0", "0", "-2e3"}));
  EXPECT_EQ(clean_column_values(V{"Not Available", "1/2%"}, DataKind::Date), (V{"Not Available", "1/2"}));
}

TEST(CleanValues, IdempotentAndNumericTotal) {
  std::mt19937 gen(11);
  const std::string alphabet = "0123456789.%-eN aA";
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> raw(5);
    for (auto& v : raw) {
      const int len = static_cast<int>(gen() % 7);
      for (int i = 0; i < len; ++i) v.push_back(alphabet[gen() % alphabet.size()]);
    }
    for (DataKind kind : {DataKind::Int, DataKind::Float, DataKind::Varchar}) {
      const auto once = clean_column_values(raw, kind);
      EXPECT_EQ(clean_column_values(once, kind), once);
      if (is_numeric(kind)) {
        for (const auto& v : once) EXPECT_TRUE(parse_number(v).has_value()) << v;
      }
    }
  }
}

TEST(Csv, QuotedFieldsAndLineEnds) {
  const auto rows = parse_csv("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\n\"multi\nline\",\"\"\n\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "x,1");
  EXPECT_EQ(rows[1][1], "say \"hi\"");
  EXPECT_EQ(rows[2][0], "multi\nline");
  EXPECT_EQ(rows[2][1], "");
}

TEST(Csv, Errors) {
  EXPECT_EQ(code_of([] { parse_csv("\"open\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_csv("\"a\"b\n"); }), ErrorCode::Parse);
}

TEST(LoadTable, CleansAndResolvesLength) {
  auto schema = parse_schema_spec("Rate|FLOAT|-|-\nState|CHAR|2|-\n", SchemaRole::Source);
  const auto table = load_table(schema, "r,s\nNot Available,AL\n12.5%,AR\n7,AZ\n");
  EXPECT_EQ(table.row_count, 3u);
  EXPECT_EQ(table.columns[0], (std::vector<std::string>{"0", "12.5", "7"}));
  EXPECT_EQ(table.schema[0].declared_length, 4);
  EXPECT_EQ(table.schema[1].declared_length, 2);
}

TEST(LoadTable, ShapeErrors) {
  auto schema = parse_schema_spec("a|INT|-|-\nb|INT|-|-\n", SchemaRole::Source);
  EXPECT_EQ(code_of([&] { load_table(schema, "a\n1\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { load_table(schema, "a,b\n1\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { load_table(schema, ""); }), ErrorCode::Parse);
  EXPECT_EQ(load_table(schema, "a,b\n").row_count, 0u);
}
