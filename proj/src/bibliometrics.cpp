#include "resprod/bibliometrics.hpp"

#include <algorithm>
#include <sstream>

#include "resprod/errors.hpp"

namespace resprod::bibliometrics {

namespace {

bool in_years(int year, std::span<const int> years) {
  return std::find(years.begin(), years.end(), year) != years.end();
}

const std::size_t* staff_in_cell(const PublicationCredit& c, const DmuId& cell) {
  const auto it = c.staff_authors.find(cell);
  return it == c.staff_authors.end() ? nullptr : &it->second;
}

double fraction(const PublicationCredit& c, std::size_t b) {
  if (c.author_count == 0) throw CorruptRecordError("publication " + c.publication + " has no authors");
  if (b > c.author_count) {
    throw CorruptRecordError("publication " + c.publication + " credits " + std::to_string(b) +
                             " staff authors out of " + std::to_string(c.author_count));
  }
  return static_cast<double>(b) / static_cast<double>(c.author_count);
}

double weight_or_warn(const JournalTable& journals, const PublicationCredit& c,
                      std::vector<std::string>* warnings) {
  if (const auto w = journals.weight(c.journal, c.year)) return *w;
  if (warnings) {
    const char* why = journals.knows(c.journal) ? " has no impact weight for " : " is unknown; no weight for ";
    warnings->push_back("journal " + c.journal + why + std::to_string(c.year) + " (publication " +
                        c.publication + "); counted as 0");
  }
  return 0.0;
}

bool qualifies(const PublicationCredit& c, std::span<const int> years) {
  return (c.doc_type == DocType::article || c.doc_type == DocType::review) && in_years(c.year, years);
}

}  // namespace

AuthorshipTable::AuthorshipTable(std::vector<PublicationCredit> credits, std::set<AreaId> areas,
                                 std::set<UniversityId> universities)
    : credits_(std::move(credits)), areas_(std::move(areas)), universities_(std::move(universities)) {}

AuthorshipTable AuthorshipTable::build(const std::vector<Publication>& publications,
                                       const std::vector<disambiguation::Assignment>& assignments,
                                       const StaffRegistry& registry) {
  std::map<PublicationId, std::size_t> index;
  std::vector<PublicationCredit> credits;
  credits.reserve(publications.size());
  for (const auto& p : publications) {
    if (!index.emplace(p.id, credits.size()).second) {
      throw StructuralError("duplicate publication id " + p.id);
    }
    credits.push_back({p.id, p.year, p.doc_type, p.journal, p.author_count(), {}});
  }
  for (const auto& a : assignments) {
    if (a.outcome.kind != disambiguation::OutcomeKind::matched) continue;
    const auto pub = index.find(a.publication);
    if (pub == index.end()) throw LookupError("assignment for unknown publication " + a.publication);
    const StaffMember* s = registry.find(a.outcome.candidates.front());
    if (!s) throw LookupError("assignment to unknown staff " + a.outcome.candidates.front());
    ++credits[pub->second].staff_authors[DmuId{s->university, s->area}];
  }
  std::set<AreaId> areas;
  for (const auto& a : registry.areas()) areas.insert(a);
  return AuthorshipTable(std::move(credits), std::move(areas), registry.universities());
}

void AuthorshipTable::require_known(const AreaId& area, const UniversityId& university) const {
  if (!areas_.count(area)) throw LookupError("unknown area id " + area);
  if (!universities_.count(university)) throw LookupError("unknown university id " + university);
}

std::size_t compute_pu(const AuthorshipTable& table, const AreaId& area, const UniversityId& university,
                       std::span<const int> years) {
  table.require_known(area, university);
  const DmuId cell{university, area};
  std::size_t n = 0;
  for (const auto& c : table.credits()) {
    if (qualifies(c, years) && staff_in_cell(c, cell)) ++n;
  }
  return n;
}

double compute_pc(const AuthorshipTable& table, const AreaId& area, const UniversityId& university,
                  std::span<const int> years) {
  table.require_known(area, university);
  const DmuId cell{university, area};
  double sum = 0.0;
  for (const auto& c : table.credits()) {
    if (!qualifies(c, years)) continue;
    if (const auto* b = staff_in_cell(c, cell)) sum += fraction(c, *b);
  }
  return sum;
}

double compute_ss(const AuthorshipTable& table, const JournalTable& journals, const AreaId& area,
                  const UniversityId& university, std::span<const int> years,
                  std::vector<std::string>* warnings) {
  table.require_known(area, university);
  const DmuId cell{university, area};
  double sum = 0.0;
  for (const auto& c : table.credits()) {
    if (qualifies(c, years) && staff_in_cell(c, cell)) sum += weight_or_warn(journals, c, warnings);
  }
  return sum;
}

std::map<DmuId, OutputTotals> compute_all_outputs(const AuthorshipTable& table, const JournalTable& journals,
                                                  std::span<const int> years,
                                                  std::vector<std::string>* warnings) {
  std::map<DmuId, OutputTotals> out;
  for (const auto& c : table.credits()) {
    if (!qualifies(c, years) || c.staff_authors.empty()) continue;
    // One warning per publication, however many cells it credits.
    const double w = weight_or_warn(journals, c, warnings);
    for (const auto& [cell, b] : c.staff_authors) {
      auto& t = out[cell];
      t.pu += 1.0;
      t.pc += fraction(c, b);
      t.ss += w;
    }
  }
  return out;
}

InputVector build_input_vector(const StaffRegistry& staff, const FundingTable& funding, const AreaId& area,
                               const UniversityId& university, std::span<const int> output_years, int lag) {
  const DmuId cell{university, area};
  auto all = build_all_input_vectors(staff, funding, output_years, lag);
  const auto it = all.find(cell);
  if (it != all.end()) return it->second;
  // A cell without staff still has a well-defined PRIN mean.
  InputVector v;
  for (int y : output_years) v.pr += funding.amount(university, area, y - lag);
  v.pr /= static_cast<double>(output_years.size());
  return v;
}

std::map<DmuId, InputVector> build_all_input_vectors(const StaffRegistry& staff, const FundingTable& funding,
                                                     std::span<const int> output_years, int lag) {
  if (output_years.empty()) throw StructuralError("output years must not be empty");
  std::vector<int> missing;
  std::ostringstream why;
  for (int y : output_years) {
    const int snap = y - lag;
    const bool no_staff = !staff.covers(snap);
    const bool no_funding = !funding.covers(snap);
    if (!no_staff && !no_funding) continue;
    if (std::find(missing.begin(), missing.end(), snap) == missing.end()) missing.push_back(snap);
    why << (why.tellp() > 0 ? "; " : "") << snap << ":";
    if (no_staff) why << " staff";
    if (no_funding) why << " funding";
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    throw MissingDataError(missing, "no snapshot data for lagged years (" + why.str() + ")");
  }

  std::map<DmuId, InputVector> out;
  for (const auto& m : staff.members()) {
    auto& v = out[DmuId{m.university, m.area}];
    for (int y : output_years) {
      if (!m.active_in(y - lag)) continue;
      switch (m.rank) {
        case Rank::full_professor:
          v.fp += 1.0;
          break;
        case Rank::associate_professor:
          v.ap += 1.0;
          break;
        case Rank::research_fellow:
          v.rf += 1.0;
          break;
      }
    }
  }
  const double n = static_cast<double>(output_years.size());
  for (auto& [cell, v] : out) {
    for (int y : output_years) v.pr += funding.amount(cell.university, cell.area, y - lag);
    v.fp /= n;
    v.ap /= n;
    v.rf /= n;
    v.pr /= n;
  }
  return out;
}

double CellData::value(const std::string& label) const {
  if (label == "FP") return inputs.fp;
  if (label == "AP") return inputs.ap;
  if (label == "RF") return inputs.rf;
  if (label == "PR") return inputs.pr;
  if (label == "PU") return outputs.pu;
  if (label == "PC") return outputs.pc;
  if (label == "SS") return outputs.ss;
  throw StructuralError("unknown variable label " + label);
}

std::vector<CellData> build_cells(const StaffRegistry& staff, const FundingTable& funding,
                                  const AuthorshipTable& table, const JournalTable& journals,
                                  std::span<const int> output_years, int lag,
                                  std::vector<std::string>* warnings) {
  const auto inputs = build_all_input_vectors(staff, funding, output_years, lag);
  const auto totals = compute_all_outputs(table, journals, output_years, warnings);
  const double n = static_cast<double>(output_years.size());
  std::vector<CellData> cells;
  cells.reserve(inputs.size());
  for (const auto& [id, in] : inputs) {
    CellData c{id, in, {}};
    if (const auto t = totals.find(id); t != totals.end()) {
      c.outputs = {t->second.pu / n, t->second.pc / n, t->second.ss / n};
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

std::string_view to_string(ExclusionReason reason) noexcept {
  switch (reason) {
    case ExclusionReason::below_staff_threshold:
      return "below_staff_threshold";
    case ExclusionReason::zero_output:
      return "zero_output";
    case ExclusionReason::zero_input:
      return "zero_input";
  }
  return "?";
}

ScreenedArea screen_cells(const std::vector<CellData>& cells, const AreaId& area,
                          const AssembleOptions& options) {
  if (options.inputs.empty() || options.outputs.empty()) {
    throw StructuralError("at least one input and one output must be selected");
  }
  for (const auto& l : options.inputs) {
    if (std::find(kInputLabels.begin(), kInputLabels.end(), l) == kInputLabels.end()) {
      throw StructuralError("unknown input label " + l);
    }
  }
  for (const auto& l : options.outputs) {
    if (std::find(kOutputLabels.begin(), kOutputLabels.end(), l) == kOutputLabels.end()) {
      throw StructuralError("unknown output label " + l);
    }
  }

  std::vector<const CellData*> in_area;
  for (const auto& c : cells) {
    if (c.id.area == area) in_area.push_back(&c);
  }
  std::sort(in_area.begin(), in_area.end(), [](const CellData* a, const CellData* b) {
    return natural_less(a->id.university, b->id.university);
  });

  ScreenedArea s;
  s.candidates = in_area.size();
  auto& kept = s.kept;
  auto& excluded = s.excluded;
  for (const CellData* c : in_area) {
    dea::DmuRecord r{c->id, {}, {}};
    for (const auto& l : options.inputs) r.inputs.push_back(c->value(l));
    for (const auto& l : options.outputs) r.outputs.push_back(c->value(l));
    const auto positive = [](double v) { return v > 0.0; };

    std::ostringstream detail;
    detail.precision(12);
    // Tolerate averaging round-off at the threshold boundary.
    if (c->inputs.staff() < options.min_staff - 1e-9) {
      detail << "averaged staff " << c->inputs.staff() << " < " << options.min_staff;
      excluded.push_back({c->id, ExclusionReason::below_staff_threshold, detail.str()});
    } else if (std::none_of(r.outputs.begin(), r.outputs.end(), positive)) {
      excluded.push_back({c->id, ExclusionReason::zero_output, "all selected outputs are zero"});
    } else if (std::none_of(r.inputs.begin(), r.inputs.end(), positive)) {
      excluded.push_back({c->id, ExclusionReason::zero_input, "all selected inputs are zero"});
    } else {
      kept.push_back(std::move(r));
    }
  }
  return s;
}

AssembledArea assemble_problem(const std::vector<CellData>& cells, const AreaId& area,
                               const AssembleOptions& options) {
  auto s = screen_cells(cells, area, options);
  if (s.kept.size() < 2) {
    throw AreaNotAnalyzableError("area " + area + " has " + std::to_string(s.kept.size()) +
                                 " analyzable DMU(s) of " + std::to_string(s.candidates) + "; need at least 2");
  }
  return {dea::DeaProblem(std::move(s.kept), options.inputs, options.outputs), std::move(s.excluded)};
}

}  // namespace resprod::bibliometrics
