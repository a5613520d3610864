#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "resprod/dea.hpp"
#include "resprod/disambiguation.hpp"
#include "resprod/records.hpp"
#include "resprod/types.hpp"

namespace resprod::bibliometrics {

/// One publication reduced to what the output indicators need: its total
/// author count c and, per (university, area) cell, the number b of byline
/// positions matched to staff of that cell.
struct PublicationCredit {
  PublicationId publication;
  int year = 0;
  DocType doc_type = DocType::article;
  JournalId journal;
  std::size_t author_count = 0;
  std::map<DmuId, std::size_t> staff_authors;
};

/// Credits plus the universe of known areas and universities used to reject
/// lookups for ids that do not exist.
class AuthorshipTable {
 public:
  AuthorshipTable(std::vector<PublicationCredit> credits, std::set<AreaId> areas,
                  std::set<UniversityId> universities);

  /// Only matched outcomes contribute; ambiguous and unmatched positions count
  /// towards c but towards no cell.
  static AuthorshipTable build(const std::vector<Publication>& publications,
                               const std::vector<disambiguation::Assignment>& assignments,
                               const StaffRegistry& registry);

  const std::vector<PublicationCredit>& credits() const noexcept { return credits_; }
  const std::set<AreaId>& areas() const noexcept { return areas_; }
  const std::set<UniversityId>& universities() const noexcept { return universities_; }

  /// Throws LookupError when either id is unknown.
  void require_known(const AreaId& area, const UniversityId& university) const;

 private:
  std::vector<PublicationCredit> credits_;
  std::set<AreaId> areas_;
  std::set<UniversityId> universities_;
};

/// Article/review publications of `years` with at least one author in the cell.
std::size_t compute_pu(const AuthorshipTable& table, const AreaId& area, const UniversityId& university,
                       std::span<const int> years);

/// Sum of b/c over the publications counted by compute_pu. Throws
/// CorruptRecordError when c = 0 or b > c.
double compute_pc(const AuthorshipTable& table, const AreaId& area, const UniversityId& university,
                  std::span<const int> years);

/// Sum of journal impact weights over the publications counted by compute_pu.
/// Missing weights contribute zero and append one warning per publication.
double compute_ss(const AuthorshipTable& table, const JournalTable& journals, const AreaId& area,
                  const UniversityId& university, std::span<const int> years,
                  std::vector<std::string>* warnings = nullptr);

struct OutputTotals {
  double pu = 0.0;
  double pc = 0.0;
  double ss = 0.0;
};

/// compute_pu/pc/ss for every cell in one pass over the credits.
std::map<DmuId, OutputTotals> compute_all_outputs(const AuthorshipTable& table, const JournalTable& journals,
                                                  std::span<const int> years,
                                                  std::vector<std::string>* warnings = nullptr);

struct InputVector {
  double fp = 0.0;
  double ap = 0.0;
  double rf = 0.0;
  double pr = 0.0;

  double staff() const noexcept { return fp + ap + rf; }
};

/// Means over `output_years` of staff headcounts by rank and of PRIN funding,
/// each taken at year - lag. Throws MissingDataError listing every lagged year
/// the staff registry or funding table does not cover, StructuralError when
/// `output_years` is empty.
InputVector build_input_vector(const StaffRegistry& staff, const FundingTable& funding, const AreaId& area,
                               const UniversityId& university, std::span<const int> output_years, int lag = 1);

/// build_input_vector for every (university, area) cell in the registry.
std::map<DmuId, InputVector> build_all_input_vectors(const StaffRegistry& staff, const FundingTable& funding,
                                                     std::span<const int> output_years, int lag = 1);

/// Averaged inputs and outputs of one DMU, keyed by variable label.
struct CellData {
  DmuId id;
  InputVector inputs;
  OutputTotals outputs;  // per-year means

  double value(const std::string& label) const;
};

inline const std::vector<std::string> kInputLabels{"FP", "AP", "RF", "PR"};
inline const std::vector<std::string> kOutputLabels{"PU", "PC", "SS"};

/// Joins inputs and outputs for every staffed cell, dividing output totals by
/// the number of output years.
std::vector<CellData> build_cells(const StaffRegistry& staff, const FundingTable& funding,
                                  const AuthorshipTable& table, const JournalTable& journals,
                                  std::span<const int> output_years, int lag = 1,
                                  std::vector<std::string>* warnings = nullptr);

enum class ExclusionReason { below_staff_threshold, zero_output, zero_input };

std::string_view to_string(ExclusionReason reason) noexcept;

struct Exclusion {
  DmuId id;
  ExclusionReason reason;
  std::string detail;
};

struct AssembleOptions {
  double min_staff = 4.0;
  std::vector<std::string> inputs = kInputLabels;
  std::vector<std::string> outputs = kOutputLabels;
};

struct ScreenedArea {
  std::vector<dea::DmuRecord> kept;  // ordered by university id, naturally
  std::vector<Exclusion> excluded;
  std::size_t candidates = 0;        // cells of the area before screening
};

/// The exclusion step of assemble_problem without the size check.
ScreenedArea screen_cells(const std::vector<CellData>& cells, const AreaId& area,
                          const AssembleOptions& options = {});

struct AssembledArea {
  dea::DeaProblem problem;
  std::vector<Exclusion> excluded;
};

/// DEA problem for one area. Cells of other areas are ignored. A cell is
/// excluded (first matching reason only) when its averaged FP+AP+RF is below
/// `min_staff`, when every selected output is zero, or when every selected
/// input is zero. Throws AreaNotAnalyzableError when fewer than two DMUs
/// survive, StructuralError for unknown labels or an empty selection.
AssembledArea assemble_problem(const std::vector<CellData>& cells, const AreaId& area,
                               const AssembleOptions& options = {});

}  // namespace resprod::bibliometrics
