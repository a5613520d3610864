#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace resprod::report {

/// Scores print with 6 decimals in CSV, other reals with 12 significant digits.
enum class CellKind { empty, text, integer, score, real };

struct Cell {
  CellKind kind = CellKind::empty;
  std::string text;
  long long integer = 0;
  double real = 0.0;

  static Cell none() { return {}; }
  static Cell str(std::string s) { return {CellKind::text, std::move(s), 0, 0.0}; }
  static Cell count(long long v) { return {CellKind::integer, {}, v, 0.0}; }
  static Cell score(double v) { return {CellKind::score, {}, 0, v}; }
  static Cell num(double v) { return {CellKind::real, {}, 0, v}; }
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws StructuralError when the row width differs from the column count.
  void add(std::vector<Cell> row);
  /// Index of a column; throws LookupError when absent.
  std::size_t column(std::string_view name) const;
};

struct Report {
  std::vector<Table> tables;

  const Table* find(std::string_view name) const;
};

enum class Format { csv, json };

std::string format_cell(const Cell& cell);
std::string to_csv(const Table& table);
/// All tables in one document; reals keep full precision.
std::string to_json(const Report& report);

/// CSV: one <table>.csv per table. JSON: report.json plus manual_review.csv,
/// which is the file reviewers fill in and feed back as overrides.
void write(const Report& report, const std::filesystem::path& dir, Format format);

/// A CSV-emitted table read back as text cells.
struct ParsedTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

ParsedTable parse_csv(std::string_view content, const std::string& source);

}  // namespace resprod::report
