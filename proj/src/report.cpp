#include "resprod/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "resprod/csv.hpp"
#include "resprod/errors.hpp"

namespace resprod::report {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw StructuralError("table " + name + ": row has " + std::to_string(row.size()) + " cells for " +
                          std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column(std::string_view col) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == col) return i;
  }
  throw LookupError("table " + name + " has no column " + std::string(col));
}

const Table* Report::find(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

namespace {

std::string printf_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  std::string s = buf;
  // Values that round to zero print without a sign.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace

std::string format_cell(const Cell& cell) {
  switch (cell.kind) {
    case CellKind::empty:
      return "";
    case CellKind::text:
      return cell.text;
    case CellKind::integer:
      return std::to_string(cell.integer);
    case CellKind::score:
      return printf_double("%.6f", cell.real);
    case CellKind::real:
      return printf_double("%.12g", cell.real);
  }
  return "";
}

std::string to_csv(const Table& table) {
  std::string out = csv::format_row(table.columns) + "\n";
  std::vector<std::string> fields;
  for (const auto& row : table.rows) {
    fields.clear();
    for (const auto& c : row) fields.push_back(format_cell(c));
    out += csv::format_row(fields) + "\n";
  }
  return out;
}

std::string to_json(const Report& report) {
  using nlohmann::ordered_json;
  ordered_json tables = ordered_json::array();
  for (const auto& t : report.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json r = ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        const Cell& c = row[i];
        switch (c.kind) {
          case CellKind::empty:
            r[t.columns[i]] = nullptr;
            break;
          case CellKind::text:
            r[t.columns[i]] = c.text;
            break;
          case CellKind::integer:
            r[t.columns[i]] = c.integer;
            break;
          case CellKind::score:
          case CellKind::real:
            r[t.columns[i]] = c.real == 0.0 ? 0.0 : c.real;
            break;
        }
      }
      rows.push_back(std::move(r));
    }
    tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
  }
  return ordered_json{{"tables", std::move(tables)}}.dump(2) + "\n";
}

namespace {

void write_text(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + p.string());
  out << content;
  if (!out) throw Error("failed writing " + p.string());
}

}  // namespace

void write(const Report& report, const std::filesystem::path& dir, Format format) {
  std::filesystem::create_directories(dir);
  if (format == Format::json) {
    write_text(dir / "report.json", to_json(report));
    if (const Table* review = report.find("manual_review")) write_text(dir / "manual_review.csv", to_csv(*review));
    return;
  }
  for (const auto& t : report.tables) write_text(dir / (t.name + ".csv"), to_csv(t));
}

ParsedTable parse_csv(std::string_view content, const std::string& source) {
  auto records = csv::parse(content, source);
  ParsedTable t;
  if (records.empty()) return t;
  t.columns = std::move(records.front().fields);
  for (std::size_t i = 1; i < records.size(); ++i) t.rows.push_back(std::move(records[i].fields));
  return t;
}

}  // namespace resprod::report
