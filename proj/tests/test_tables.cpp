#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include <json.hpp>

#include "tds/tables.hpp"

using tds::Table;
using tds::TableKind;
using tds::TableSpec;

namespace {

const tds::TableCell& cell(const Table& t, std::size_t d, const std::string& column) {
  for (const auto& row : t.rows) {
    if (row.d != d) continue;
    for (const auto& c : row.cells) {
      if (c.column == column) return c;
    }
  }
  throw std::out_of_range("no such cell");
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST(Tables, Table2Cells) {
  const Table t = tds::make_table(TableSpec::defaults(TableKind::table2));
  EXPECT_EQ(t.rows.size(), 29u);
  EXPECT_EQ(cell(t, 5, "k=2").result.cardinality_bound, 17);
  EXPECT_EQ(cell(t, 7, "k=2").result.cardinality_bound, 65);
  EXPECT_TRUE(cell(t, 8, "k=2").blank());
  EXPECT_EQ(cell(t, 18, "k=3").result.cardinality_bound, 77);
  EXPECT_EQ(cell(t, 23, "k=3").result.cardinality_bound, 577);
  EXPECT_TRUE(cell(t, 24, "k=3").blank());
  EXPECT_EQ(cell(t, 33, "k=5").result.cardinality_bound, 58);
}

TEST(Tables, Table2MatchesEveryPrintedCell) {
  const Table t = tds::make_table(TableSpec::defaults(TableKind::table2));
  std::size_t printed = 0;
  for (const auto& row : t.rows) {
    for (const auto& c : row.cells) printed += tds::published_value(TableKind::table2, row.d, c.column).printed;
  }
  EXPECT_EQ(printed, 116u);
  EXPECT_TRUE(tds::diff_against_published(t).empty());
}

TEST(Tables, Table3DiffIsTheKFiveBlock) {
  const Table t = tds::make_table(TableSpec::defaults(TableKind::table3));
  EXPECT_EQ(cell(t, 17, "k=3").result.cardinality_bound, 51);
  EXPECT_EQ(cell(t, 28, "k=5").result.cardinality_bound, 42);
  const auto diffs = tds::diff_against_published(t);
  std::set<std::size_t> ds;
  for (const auto& d : diffs) {
    EXPECT_EQ(d.column, "k=5");
    EXPECT_EQ(d.reason, "printed value equals the Euclidean bound for the same d and k");
    ds.insert(d.d);
  }
  EXPECT_EQ(ds, (std::set<std::size_t>{28, 29, 30, 31, 32, 33}));
  // d = 25..27 of the same column agree with the formula.
  for (std::size_t d = 25; d <= 27; ++d) {
    EXPECT_EQ(cell(t, d, "k=5").result.cardinality_bound, *tds::published_value(TableKind::table3, d, "k=5").value);
  }
}

TEST(Tables, Table4WithCatalog) {
  const auto catalog = tds::EtfCatalog::bundled();
  const Table t = tds::make_table(TableSpec::defaults(TableKind::table4), &catalog);
  EXPECT_EQ(t.rows.front().d, 9u);
  EXPECT_EQ(t.rows.back().d, 23u);
  EXPECT_EQ(cell(t, 18, "g5").result.cardinality_bound, 76);
  EXPECT_EQ(cell(t, 19, "M5+").result.cardinality_bound, 75);
  EXPECT_EQ(cell(t, 18, "M5-").result.cardinality_bound, 75);
  EXPECT_EQ(cell(t, 14, "M5-").result.cardinality_bound, 36);
  const auto diffs = tds::diff_against_published(t);
  std::set<std::size_t> ds;
  for (const auto& d : diffs) {
    EXPECT_EQ(d.column, "M5-");
    EXPECT_FALSE(tds::is_integer(d.exact_value));
    EXPECT_EQ(*d.published, tds::ceil(d.exact_value));
    ds.insert(d.d);
  }
  EXPECT_EQ(ds, (std::set<std::size_t>{10, 11, 13, 15, 17}));
}

TEST(Tables, Table4WithoutCatalogFlagsRefinements) {
  const Table t = tds::make_table(TableSpec::defaults(TableKind::table4));
  const auto diffs = tds::diff_against_published(t);
  std::size_t refinement = 0;
  for (const auto& d : diffs) refinement += d.reason == "printed value includes an ETF nonexistence refinement";
  EXPECT_EQ(refinement, 3u);
  EXPECT_EQ(diffs.size(), 8u);
}

TEST(Tables, CustomRange) {
  TableSpec spec = TableSpec::defaults(TableKind::table2);
  spec.d_min = 40;
  spec.d_max = 42;
  spec.k_min = 6;
  spec.k_max = 7;
  const Table t = tds::make_table(spec);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"k=6", "k=7"}));
  EXPECT_FALSE(tds::published_value(TableKind::table2, 40, "k=6").printed);
  EXPECT_TRUE(tds::diff_against_published(t).empty());
  spec.d_min = 1;
  EXPECT_THROW(tds::make_table(spec), tds::DomainError);
}

TEST(Render, CsvParsesAndIsStable) {
  const Table t = tds::make_table(TableSpec::defaults(TableKind::table3));
  std::ostringstream a, b;
  tds::render_csv(a, t);
  tds::render_csv(b, tds::make_table(TableSpec::defaults(TableKind::table3)));
  EXPECT_EQ(a.str(), b.str());
  const auto lines = split_lines(a.str());
  ASSERT_EQ(lines.size(), 30u);
  EXPECT_EQ(lines[0], "d,k=2,k=3,k=4,k=5");
  EXPECT_EQ(lines[1], "5,10,6,5,5");
  EXPECT_EQ(lines.back(), "33,,,99,55");
  for (const auto& line : lines) EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
}

TEST(Render, CsvWithPublished) {
  const Table t = tds::make_table(TableSpec::defaults(TableKind::table3));
  std::ostringstream out;
  tds::render_csv(out, t, true);
  const auto lines = split_lines(out.str());
  EXPECT_EQ(lines[0], "d,column,exact_value,computed,published,match,refined");
  std::size_t mismatches = 0;
  for (const auto& line : lines) mismatches += line.find(",no,") != std::string::npos;
  EXPECT_EQ(mismatches, 6u);
  EXPECT_NE(out.str().find("28,k=5,2240/53,42,45,no,no"), std::string::npos);
}

TEST(Render, MarkdownAligned) {
  for (auto kind : {TableKind::table2, TableKind::table3, TableKind::table4}) {
    const Table t = tds::make_table(TableSpec::defaults(kind));
    std::ostringstream out;
    tds::render_markdown(out, t, true);
    const auto lines = split_lines(out.str());
    const std::size_t width = lines.front().size();
    std::size_t rows = 0;
    for (const auto& line : lines) {
      if (line.empty() || line.front() != '|') continue;
      EXPECT_EQ(line.size(), width);
      ++rows;
    }
    EXPECT_EQ(rows, t.rows.size() + 2);
  }
}

TEST(Render, JsonParses) {
  const auto catalog = tds::EtfCatalog::bundled();
  const Table t = tds::make_table(TableSpec::defaults(TableKind::table4), &catalog);
  std::ostringstream out;
  tds::render_json(out, t, true);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["table"], "table4");
  EXPECT_EQ(doc["rows"].size(), 15u);
  EXPECT_EQ(doc["diffs"].size(), 5u);
  EXPECT_EQ(doc["rows"][9]["cells"]["g5"]["cardinality_bound"], 76);
  EXPECT_EQ(doc["rows"][9]["cells"]["g5"]["refined"], true);
}

TEST(TableKind, Names) {
  EXPECT_EQ(tds::parse_table_kind("table3"), TableKind::table3);
  EXPECT_THROW(tds::parse_table_kind("table9"), tds::ParseError);
}
