#include "tds/tables.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace tds {

namespace {

// Published rows, blanks encoded as 0.
struct PublishedRow {
  int d;
  std::array<int, 4> values;
  const char* reference;
};

constexpr std::array<PublishedRow, 29> kTable2 = {{
    {5, {17, 8, 7, 7}, "16"},        {6, {29, 10, 9, 8}, "27"},       {7, {65, 12, 10, 9}, "29"},
    {8, {0, 14, 11, 11}, "45"},      {9, {0, 17, 13, 12}, "45-"},     {10, {0, 19, 14, 13}, "55-"},
    {11, {0, 23, 16, 14}, "66-"},    {12, {0, 27, 18, 16}, "78-"},    {13, {0, 31, 20, 17}, "91-"},
    {14, {0, 37, 22, 19}, "105-"},   {15, {0, 43, 24, 20}, "120-"},   {16, {0, 52, 26, 22}, "136-"},
    {17, {0, 62, 28, 23}, "153-"},   {18, {0, 77, 31, 25}, "171-"},   {19, {0, 97, 34, 27}, "190-"},
    {20, {0, 127, 37, 29}, "210-"},  {21, {0, 177, 40, 30}, "231-"},  {22, {0, 277, 43, 32}, "253-"},
    {23, {0, 577, 47, 34}, "276-"},  {24, {0, 0, 51, 36}, "300-"},    {25, {0, 0, 55, 38}, "325-"},
    {26, {0, 0, 59, 41}, "351-"},    {27, {0, 0, 65, 43}, "378-"},    {28, {0, 0, 70, 45}, "406-"},
    {29, {0, 0, 76, 48}, "435-"},    {30, {0, 0, 83, 50}, "465-"},    {31, {0, 0, 91, 53}, "496-"},
    {32, {0, 0, 100, 56}, "528-"},   {33, {0, 0, 109, 58}, "561-"},
}};

constexpr std::array<PublishedRow, 29> kTable3 = {{
    {5, {10, 6, 5, 5}, "16"},       {6, {16, 7, 6, 6}, "27"},      {7, {28, 9, 8, 7}, "28"},
    {8, {64, 11, 9, 8}, "36"},      {9, {0, 13, 10, 10}, "45"},    {10, {0, 16, 12, 11}, "55"},
    {11, {0, 18, 13, 12}, "66"},    {12, {0, 22, 15, 13}, "78"},   {13, {0, 26, 17, 15}, "91"},
    {14, {0, 30, 19, 16}, "105"},   {15, {0, 36, 21, 18}, "120"},  {16, {0, 42, 23, 19}, "136"},
    {17, {0, 51, 25, 21}, "153"},   {18, {0, 61, 27, 22}, "171"},  {19, {0, 76, 30, 24}, "190"},
    {20, {0, 96, 33, 26}, "210"},   {21, {0, 126, 36, 28}, "231"}, {22, {0, 176, 39, 29}, "275"},
    {23, {0, 276, 42, 31}, "276"},  {24, {0, 576, 46, 33}, "300"}, {25, {0, 0, 50, 35}, "325"},
    {26, {0, 0, 54, 37}, "351"},    {27, {0, 0, 58, 40}, "378"},   {28, {0, 0, 64, 45}, "406"},
    {29, {0, 0, 69, 48}, "435"},    {30, {0, 0, 75, 50}, "465"},   {31, {0, 0, 82, 53}, "496"},
    {32, {0, 0, 90, 56}, "528"},    {33, {0, 0, 99, 58}, "561"},
}};

// d, g5, M5+, M5- (last entry unused).
constexpr std::array<PublishedRow, 15> kTable4 = {{
    {9, {17, 13, 16, 0}, ""},     {10, {19, 16, 19, 0}, ""},    {11, {23, 18, 23, 0}, ""},
    {12, {27, 22, 26, 0}, ""},    {13, {31, 26, 31, 0}, ""},    {14, {37, 30, 36, 0}, ""},
    {15, {43, 36, 43, 0}, ""},    {16, {52, 42, 51, 0}, ""},    {17, {62, 51, 62, 0}, ""},
    {18, {76, 61, 75, 0}, ""},    {19, {97, 75, 96, 0}, ""},    {20, {127, 96, 126, 0}, ""},
    {21, {177, 126, 176, 0}, ""}, {22, {277, 176, 276, 0}, ""}, {23, {577, 276, 576, 0}, ""},
}};

const std::array<const char*, 3> kTable4Columns = {"g5", "M5+", "M5-"};

std::string k_column(unsigned k) { return "k=" + std::to_string(k); }

const PublishedRow* find_row(TableKind kind, std::size_t d) {
  auto search = [d](const auto& rows) -> const PublishedRow* {
    for (const auto& r : rows) {
      if (std::size_t(r.d) == d) return &r;
    }
    return nullptr;
  };
  switch (kind) {
    case TableKind::table2: return search(kTable2);
    case TableKind::table3: return search(kTable3);
    case TableKind::table4: return search(kTable4);
  }
  return nullptr;
}

std::optional<std::size_t> column_index(TableKind kind, const std::string& column) {
  if (kind == TableKind::table4) {
    for (std::size_t i = 0; i < kTable4Columns.size(); ++i) {
      if (column == kTable4Columns[i]) return i;
    }
    return std::nullopt;
  }
  for (unsigned k = 2; k <= 5; ++k) {
    if (column == k_column(k)) return k - 2;
  }
  return std::nullopt;
}

Rational gamma_for_k(unsigned k) { return gamma_of_k(k).gamma; }

}  // namespace

std::string to_string(TableKind k) {
  switch (k) {
    case TableKind::table2: return "table2";
    case TableKind::table3: return "table3";
    case TableKind::table4: return "table4";
  }
  return "unknown";
}

TableKind parse_table_kind(const std::string& text) {
  for (TableKind k : {TableKind::table2, TableKind::table3, TableKind::table4}) {
    if (to_string(k) == text) return k;
  }
  throw ParseError("unknown table '" + text + "'");
}

TableSpec TableSpec::defaults(TableKind kind) {
  if (kind == TableKind::table4) return {kind, 9, 23, 3, 3};
  return {kind, 5, 33, 2, 5};
}

Table make_table(const TableSpec& spec, const EtfCatalog* catalog) {
  if (spec.d_min < 2 || spec.d_max < spec.d_min) throw DomainError("invalid table range", "need 2 <= d_min <= d_max");
  if (spec.kind != TableKind::table4 && (spec.k_min < 2 || spec.k_max < spec.k_min)) {
    throw DomainError("invalid table range", "need 2 <= k_min <= k_max");
  }

  Table table{spec.kind, {}, {}};
  if (spec.kind == TableKind::table4) {
    table.columns.assign(kTable4Columns.begin(), kTable4Columns.end());
  } else {
    for (unsigned k = spec.k_min; k <= spec.k_max; ++k) table.columns.push_back(k_column(k));
  }

  for (std::size_t d = spec.d_min; d <= spec.d_max; ++d) {
    TableRow row{d, {}};
    if (spec.kind == TableKind::table4) {
      const Rational gamma = 5;
      if (catalog) {
        row.cells.push_back({"g5", refine_euclidean(d, gamma, *catalog)});
        row.cells.push_back({"M5+", refine_spherical(d, gamma, *catalog, SphericalBranch::pos)});
        row.cells.push_back({"M5-", refine_spherical(d, gamma, *catalog, SphericalBranch::neg)});
      } else {
        row.cells.push_back({"g5", bound_euclidean(d, gamma)});
        row.cells.push_back({"M5+", bound_spherical_pos(d, gamma)});
        row.cells.push_back({"M5-", bound_spherical_neg(d, gamma)});
      }
    } else {
      for (unsigned k = spec.k_min; k <= spec.k_max; ++k) {
        const Rational gamma = gamma_for_k(k);
        BoundResult r;
        if (spec.kind == TableKind::table2) {
          r = catalog ? refine_euclidean(d, gamma, *catalog) : bound_euclidean(d, gamma);
        } else {
          r = catalog ? refine_spherical(d, gamma, *catalog, SphericalBranch::pos) : bound_spherical_pos(d, gamma);
        }
        row.cells.push_back({k_column(k), std::move(r)});
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

PublishedCell published_value(TableKind kind, std::size_t d, const std::string& column) {
  const PublishedRow* row = find_row(kind, d);
  const auto index = column_index(kind, column);
  if (!row || !index) return {};
  const int v = row->values[*index];
  return {true, v == 0 ? std::nullopt : std::optional<int>(v)};
}

std::string published_reference(TableKind kind, std::size_t d) {
  if (kind == TableKind::table4) return {};
  const PublishedRow* row = find_row(kind, d);
  return row ? row->reference : "";
}

std::vector<CellDiff> diff_against_published(const Table& table) {
  std::vector<CellDiff> diffs;
  for (const auto& row : table.rows) {
    for (const auto& cell : row.cells) {
      const PublishedCell pub = published_value(table.kind, row.d, cell.column);
      if (!pub.printed) continue;
      std::optional<Integer> computed;
      if (!cell.blank()) computed = cell.result.cardinality_bound;
      const bool same = computed.has_value() == pub.value.has_value() && (!computed || *computed == *pub.value);
      if (same) continue;

      CellDiff diff{row.d, cell.column, computed, cell.result.exact_value, pub.value, {}};
      if (computed.has_value() != pub.value.has_value()) {
        diff.reason = "blank mismatch";
      } else if (!is_integer(cell.result.exact_value) && ceil(cell.result.exact_value) == *pub.value) {
        diff.reason = "printed value is the ceiling of the exact bound " + to_string(cell.result.exact_value);
      } else if (cell.result.gamma && table.kind == TableKind::table3 &&
                 bound_euclidean(row.d, *cell.result.gamma).valid &&
                 bound_euclidean(row.d, *cell.result.gamma).cardinality_bound == *pub.value) {
        diff.reason = "printed value equals the Euclidean bound for the same d and k";
      } else if (is_integer(cell.result.exact_value) && *computed - 1 == *pub.value && !cell.result.refined) {
        diff.reason = "printed value includes an ETF nonexistence refinement";
      } else {
        diff.reason = "printed value differs from the formula";
      }
      diffs.push_back(std::move(diff));
    }
  }
  return diffs;
}

namespace {

std::string cell_text(const TableCell& cell) { return cell.blank() ? "" : cell.result.cardinality_bound.get_str(); }

std::string published_text(const PublishedCell& pub) {
  if (!pub.printed) return "";
  return pub.value ? std::to_string(*pub.value) : "blank";
}

}  // namespace

void render_csv(std::ostream& out, const Table& table, bool with_published) {
  if (!with_published) {
    out << 'd';
    for (const auto& c : table.columns) out << ',' << c;
    out << '\n';
    for (const auto& row : table.rows) {
      out << row.d;
      for (const auto& cell : row.cells) out << ',' << cell_text(cell);
      out << '\n';
    }
    return;
  }
  out << "d,column,exact_value,computed,published,match,refined\n";
  for (const auto& row : table.rows) {
    for (const auto& cell : row.cells) {
      const PublishedCell pub = published_value(table.kind, row.d, cell.column);
      std::string match;
      if (pub.printed) {
        const bool same = cell.blank() ? !pub.value : (pub.value && cell.result.cardinality_bound == *pub.value);
        match = same ? "yes" : "no";
      }
      out << row.d << ',' << cell.column << ',' << (cell.blank() ? "" : to_string(cell.result.exact_value)) << ','
          << cell_text(cell) << ',' << published_text(pub) << ',' << match << ','
          << (cell.result.refined ? "yes" : "no") << '\n';
    }
  }
}

void render_markdown(std::ostream& out, const Table& table, bool with_published) {
  std::vector<std::string> header{"d"};
  header.insert(header.end(), table.columns.begin(), table.columns.end());
  const bool reference = with_published && table.kind != TableKind::table4;
  if (reference) header.push_back(table.kind == TableKind::table2 ? "g(d) (published)" : "M+(d) (published)");

  std::vector<std::vector<std::string>> body;
  for (const auto& row : table.rows) {
    std::vector<std::string> line{std::to_string(row.d)};
    for (const auto& cell : row.cells) {
      std::string text = cell_text(cell);
      if (cell.result.refined) text += "*";
      if (with_published) {
        const PublishedCell pub = published_value(table.kind, row.d, cell.column);
        const bool same = !pub.printed || (cell.blank() ? !pub.value : (pub.value && cell.result.cardinality_bound == *pub.value));
        if (!same) text += " (published " + published_text(pub) + ")";
      }
      line.push_back(std::move(text));
    }
    if (reference) line.push_back(published_reference(table.kind, row.d));
    body.push_back(std::move(line));
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = std::max<std::size_t>(3, header[c].size());
    for (const auto& line : body) width[c] = std::max(width[c], line[c].size());
  }
  auto emit = [&](const std::vector<std::string>& line) {
    out << '|';
    for (std::size_t c = 0; c < line.size(); ++c) out << ' ' << line[c] << std::string(width[c] - line[c].size(), ' ') << " |";
    out << '\n';
  };
  emit(header);
  out << '|';
  for (std::size_t c = 0; c < header.size(); ++c) out << ' ' << std::string(width[c], '-') << " |";
  out << '\n';
  for (const auto& line : body) emit(line);

  bool any_refined = false;
  for (const auto& row : table.rows) {
    for (const auto& cell : row.cells) any_refined = any_refined || cell.result.refined;
  }
  if (any_refined) out << "\n`*` lowered by one: the catalog records that the equality-case ETF does not exist.\n";

  if (with_published) {
    const auto diffs = diff_against_published(table);
    out << "\nDifferences from the published table: " << diffs.size() << '\n';
    for (const auto& diff : diffs) {
      out << "- d=" << diff.d << ' ' << diff.column << ": computed "
          << (diff.computed ? diff.computed->get_str() : std::string("blank")) << ", published "
          << (diff.published ? std::to_string(*diff.published) : std::string("blank")) << " (" << diff.reason << ")\n";
    }
  }
}

void render_json(std::ostream& out, const Table& table, bool with_published) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["table"] = to_string(table.kind);
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r;
    r["d"] = row.d;
    ordered_json cells = ordered_json::object();
    for (const auto& cell : row.cells) {
      ordered_json c;
      c["valid"] = cell.result.valid;
      c["exact_value"] = cell.blank() ? ordered_json(nullptr) : ordered_json(to_string(cell.result.exact_value));
      c["cardinality_bound"] =
          cell.blank() ? ordered_json(nullptr) : ordered_json(cell.result.cardinality_bound.get_si());
      c["refined"] = cell.result.refined;
      c["note"] = cell.result.note;
      if (with_published) {
        const PublishedCell pub = published_value(table.kind, row.d, cell.column);
        c["published"] = pub.printed ? (pub.value ? ordered_json(*pub.value) : ordered_json("blank")) : ordered_json(nullptr);
      }
      cells[cell.column] = std::move(c);
    }
    r["cells"] = std::move(cells);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  if (with_published) {
    ordered_json diffs = ordered_json::array();
    for (const auto& diff : diff_against_published(table)) {
      ordered_json j;
      j["d"] = diff.d;
      j["column"] = diff.column;
      j["computed"] = diff.computed ? ordered_json(diff.computed->get_si()) : ordered_json(nullptr);
      j["exact_value"] = to_string(diff.exact_value);
      j["published"] = diff.published ? ordered_json(*diff.published) : ordered_json(nullptr);
      j["reason"] = diff.reason;
      diffs.push_back(std::move(j));
    }
    doc["diffs"] = std::move(diffs);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace tds
