#include "resprod/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "resprod/csv.hpp"
#include "resprod/text.hpp"

namespace resprod::ingest {

namespace {

/// A parsed CSV file whose header has been checked against required columns.
class Sheet {
 public:
  Sheet(const InputTexts::File& file, const std::vector<std::string>& required,
        std::vector<LineDiagnostic>& errors)
      : name_(file.name), errors_(errors) {
    const std::size_t before = errors.size();
    std::vector<csv::Record> records;
    try {
      records = csv::parse(file.content, file.name);
    } catch (const InputError& e) {
      errors.insert(errors.end(), e.diagnostics().begin(), e.diagnostics().end());
      return;
    }
    if (records.empty()) {
      error(1, "missing header row");
      return;
    }
    const auto& header = records.front().fields;
    for (const auto& col : required) {
      std::size_t at = header.size();
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (text::trim(header[i]) == col) at = i;
      }
      if (at == header.size()) error(records.front().line, "missing required column '" + col + "'");
      columns_.push_back(at);
    }
    if (errors.size() != before) return;
    width_ = header.size();
    for (std::size_t r = 1; r < records.size(); ++r) {
      if (records[r].fields.size() != width_) {
        error(records[r].line, "expected " + std::to_string(width_) + " fields, found " +
                                   std::to_string(records[r].fields.size()));
        continue;
      }
      rows_.push_back(std::move(records[r]));
    }
  }

  const std::vector<csv::Record>& rows() const noexcept { return rows_; }
  std::string field(const csv::Record& r, std::size_t col) const { return text::trim(r.fields[columns_[col]]); }
  const std::string& name() const noexcept { return name_; }

  void error(std::size_t line, std::string message) { errors_.push_back({name_, line, std::move(message)}); }

  std::optional<int> integer(const csv::Record& r, std::size_t col, const char* what) {
    const std::string s = field(r, col);
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      error(r.line, std::string(what) + " '" + s + "' is not an integer");
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> non_negative(const csv::Record& r, std::size_t col, const char* what) {
    const std::string s = field(r, col);
    double v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
      error(r.line, std::string(what) + " '" + s + "' is not a number");
      return std::nullopt;
    }
    if (v < 0) {
      error(r.line, std::string(what) + " must not be negative");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::string> required(const csv::Record& r, std::size_t col, const char* what) {
    std::string s = field(r, col);
    if (s.empty()) {
      error(r.line, std::string(what) + " is empty");
      return std::nullopt;
    }
    return s;
  }

 private:
  std::string name_;
  std::vector<LineDiagnostic>& errors_;
  std::vector<std::size_t> columns_;
  std::size_t width_ = 0;
  std::vector<csv::Record> rows_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& piece : text::split(s, ';')) {
    auto t = text::trim(piece);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

StaffRegistry read_staff(const InputTexts::File& f, std::vector<LineDiagnostic>& errors) {
  Sheet s(f, {"staff_id", "surname", "first_names", "rank", "university_id", "area_id", "year_from", "year_to"},
          errors);
  std::vector<StaffMember> members;
  std::map<std::string, std::size_t> first_line;
  for (const auto& r : s.rows()) {
    const auto id = s.required(r, 0, "staff_id");
    const auto surname = s.required(r, 1, "surname");
    const auto first = s.required(r, 2, "first_names");
    const auto rank = parse_rank(s.field(r, 3));
    if (!rank) s.error(r.line, "rank '" + s.field(r, 3) + "' is not one of FP, AP, RF");
    const auto uni = s.required(r, 4, "university_id");
    const auto area = s.required(r, 5, "area_id");
    const auto from = s.integer(r, 6, "year_from");
    const auto to = s.integer(r, 7, "year_to");
    if (from && to && *from > *to) s.error(r.line, "year_from is after year_to");
    if (id) {
      const auto [it, fresh] = first_line.emplace(*id, r.line);
      if (!fresh) {
        s.error(r.line, "duplicate staff_id " + *id + " on lines " + std::to_string(it->second) + " and " +
                            std::to_string(r.line));
        continue;
      }
    }
    if (id && surname && first && rank && uni && area && from && to && *from <= *to) {
      members.push_back({*id, *surname, *first, *rank, *uni, *area, *from, *to});
    }
  }
  return StaffRegistry(std::move(members));
}

std::vector<Publication> read_publications(const InputTexts::File& f, std::vector<LineDiagnostic>& errors,
                                           std::vector<std::size_t>& lines) {
  Sheet s(f, {"pub_id", "year", "doc_type", "journal_id", "authors", "raw_affiliations"}, errors);
  std::vector<Publication> out;
  std::map<std::string, std::size_t> first_line;
  for (const auto& r : s.rows()) {
    const auto id = s.required(r, 0, "pub_id");
    const auto year = s.integer(r, 1, "year");
    if (id) {
      const auto [it, fresh] = first_line.emplace(*id, r.line);
      if (!fresh) {
        s.error(r.line, "duplicate pub_id " + *id + " on lines " + std::to_string(it->second) + " and " +
                            std::to_string(r.line));
        continue;
      }
    }
    if (!id || !year) continue;
    lines.push_back(r.line);
    out.push_back({*id, *year, parse_doc_type(s.field(r, 2)), s.field(r, 3), split_list(s.field(r, 4)),
                   split_list(s.field(r, 5))});
  }
  return out;
}

JournalTable read_journals(const InputTexts::File& f, std::vector<LineDiagnostic>& errors) {
  Sheet s(f, {"journal_id", "year", "impact_weight"}, errors);
  JournalTable out;
  std::map<std::pair<std::string, int>, std::size_t> first_line;
  for (const auto& r : s.rows()) {
    const auto id = s.required(r, 0, "journal_id");
    const auto year = s.integer(r, 1, "year");
    const auto w = s.non_negative(r, 2, "impact_weight");
    if (!id || !year || !w) continue;
    const auto [it, fresh] = first_line.emplace(std::make_pair(*id, *year), r.line);
    if (!fresh) {
      s.error(r.line, "duplicate weight for journal " + *id + " year " + std::to_string(*year) + " (first on line " +
                          std::to_string(it->second) + ")");
      continue;
    }
    out.set(*id, *year, *w);
  }
  return out;
}

struct FundingRow {
  FundingRecord record;
  std::size_t line;
};

std::vector<FundingRow> read_funding(const InputTexts::File& f, std::vector<LineDiagnostic>& errors) {
  Sheet s(f, {"university_id", "area_id", "year", "prin_keur"}, errors);
  std::vector<FundingRow> out;
  for (const auto& r : s.rows()) {
    const auto uni = s.required(r, 0, "university_id");
    const auto area = s.required(r, 1, "area_id");
    const auto year = s.integer(r, 2, "year");
    const auto amount = s.non_negative(r, 3, "prin_keur");
    if (uni && area && year && amount) out.push_back({{*uni, *area, *year, *amount}, r.line});
  }
  return out;
}

disambiguation::AffiliationDictionary read_affiliations(const InputTexts::File& f,
                                                        std::vector<LineDiagnostic>& errors) {
  Sheet s(f, {"raw_pattern", "university_id"}, errors);
  disambiguation::AffiliationDictionary out;
  for (const auto& r : s.rows()) {
    const auto pattern = s.required(r, 0, "raw_pattern");
    const auto uni = s.required(r, 1, "university_id");
    if (!pattern || !uni) continue;
    try {
      out.add(*pattern, *uni);
    } catch (const StructuralError& e) {
      s.error(r.line, e.what());
    }
  }
  return out;
}

// Files stay in reading order; within a file, diagnostics follow line order.
void order_by_line(std::vector<LineDiagnostic>& errors) {
  for (auto run = errors.begin(); run != errors.end();) {
    const auto end = std::find_if(run, errors.end(), [&](const LineDiagnostic& d) { return d.file != run->file; });
    std::stable_sort(run, end, [](const LineDiagnostic& a, const LineDiagnostic& b) { return a.line < b.line; });
    run = end;
  }
}

}  // namespace

InputPaths InputPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "staff.csv", dir / "publications.csv", dir / "journals.csv", dir / "funding.csv",
          dir / "affiliations.csv"};
}

InputTexts InputTexts::read(const InputPaths& paths) {
  std::vector<LineDiagnostic> errors;
  auto load = [&](const std::filesystem::path& p) {
    try {
      return File{p.filename().string(), csv::read_file(p)};
    } catch (const InputError& e) {
      errors.insert(errors.end(), e.diagnostics().begin(), e.diagnostics().end());
      return File{p.filename().string(), ""};
    }
  };
  InputTexts t{load(paths.staff), load(paths.publications), load(paths.journals), load(paths.funding),
               load(paths.affiliations)};
  if (!errors.empty()) throw InputError(std::move(errors));
  return t;
}

Corpus ingest(const InputTexts& texts) {
  std::vector<LineDiagnostic> errors;
  Corpus c;
  c.staff = read_staff(texts.staff, errors);
  std::vector<std::size_t> pub_lines;
  c.publications = read_publications(texts.publications, errors, pub_lines);
  c.journals = read_journals(texts.journals, errors);
  const auto funding = read_funding(texts.funding, errors);
  c.affiliations = read_affiliations(texts.affiliations, errors);
  order_by_line(errors);
  if (!errors.empty()) throw InputError(std::move(errors));

  auto known = c.staff.universities();
  for (const auto& u : c.affiliations.universities()) known.insert(u);
  for (const auto& row : funding) {
    if (!known.count(row.record.university)) {
      c.warnings.push_back({texts.funding.name, row.line,
                            "unknown university " + row.record.university + "; row skipped"});
      continue;
    }
    c.funding.add(row.record);
  }
  std::set<JournalId> warned;
  for (std::size_t i = 0; i < c.publications.size(); ++i) {
    const auto& p = c.publications[i];
    if (c.journals.knows(p.journal) || !warned.insert(p.journal).second) continue;
    c.warnings.push_back({texts.publications.name, pub_lines[i],
                          "journal '" + p.journal + "' of " + p.id + " has no impact weights"});
  }
  return c;
}

Corpus ingest(const InputPaths& paths) { return ingest(InputTexts::read(paths)); }

std::vector<disambiguation::ManualOverride> read_overrides(const std::string& content, const std::string& name) {
  std::vector<LineDiagnostic> errors;
  Sheet s({name, content}, {"pub_id", "position", "resolved_staff_id"}, errors);
  std::vector<disambiguation::ManualOverride> out;
  for (const auto& r : s.rows()) {
    const auto id = s.required(r, 0, "pub_id");
    const auto pos = s.integer(r, 1, "position");
    if (pos && *pos < 1) s.error(r.line, "position must be at least 1");
    const std::string staff = s.field(r, 2);
    if (!id || !pos || *pos < 1 || staff.empty()) continue;
    disambiguation::ManualOverride o{*id, static_cast<std::size_t>(*pos), std::nullopt};
    if (staff != "-") o.staff = staff;
    out.push_back(std::move(o));
  }
  order_by_line(errors);
  if (!errors.empty()) throw InputError(std::move(errors));
  return out;
}

}  // namespace resprod::ingest
