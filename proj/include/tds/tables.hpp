#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tds/bounds.hpp"
#include "tds/etf.hpp"

namespace tds {

enum class TableKind { table2, table3, table4 };

std::string to_string(TableKind k);
TableKind parse_table_kind(const std::string& text);

/// table2: Euclidean bounds at gamma = 2k-1; table3: spherical a+b >= 0 bounds
/// at gamma = 2k-1; table4: the three bounds side by side at gamma = 5.
struct TableSpec {
  TableKind kind = TableKind::table2;
  std::size_t d_min = 5;
  std::size_t d_max = 33;
  unsigned k_min = 2;
  unsigned k_max = 5;

  static TableSpec defaults(TableKind kind);
};

struct TableCell {
  std::string column;
  BoundResult result;

  bool blank() const noexcept { return !result.valid; }
};

struct TableRow {
  std::size_t d;
  std::vector<TableCell> cells;
};

struct Table {
  TableKind kind;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
};

/// Cells are evaluated in exact arithmetic; vacuous bounds render blank.
/// ETF refinements are applied when `catalog` is non-null (the published
/// table4 includes them; tables 2 and 3 do not).
Table make_table(const TableSpec& spec, const EtfCatalog* catalog = nullptr);

/// Printed value of a published table cell. `printed` is false outside the
/// published range; a printed blank has printed = true and no value.
struct PublishedCell {
  bool printed = false;
  std::optional<int> value;
};

PublishedCell published_value(TableKind kind, std::size_t d, const std::string& column);

/// Reference-only columns printed next to the bounds: g(d) beside table2,
/// M+(d) beside table3 (a trailing '-' marks a lower bound). Empty when absent.
std::string published_reference(TableKind kind, std::size_t d);

struct CellDiff {
  std::size_t d;
  std::string column;
  std::optional<Integer> computed;
  Rational exact_value;
  std::optional<int> published;
  std::string reason;
};

/// Every printed cell whose value differs from the computed one.
std::vector<CellDiff> diff_against_published(const Table& table);

void render_csv(std::ostream& out, const Table& table, bool with_published = false);
void render_markdown(std::ostream& out, const Table& table, bool with_published = false);
void render_json(std::ostream& out, const Table& table, bool with_published = false);

}  // namespace tds
