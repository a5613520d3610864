#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "resprod/disambiguation.hpp"
#include "resprod/errors.hpp"
#include "resprod/records.hpp"

namespace resprod::ingest {

struct InputPaths {
  std::filesystem::path staff;
  std::filesystem::path publications;
  std::filesystem::path journals;
  std::filesystem::path funding;
  std::filesystem::path affiliations;

  /// staff.csv, publications.csv, journals.csv, funding.csv and affiliations.csv in `dir`.
  static InputPaths in_directory(const std::filesystem::path& dir);
};

/// File contents plus the names used in diagnostics.
struct InputTexts {
  struct File {
    std::string name;
    std::string content;
  };
  File staff, publications, journals, funding, affiliations;

  static InputTexts read(const InputPaths& paths);
};

struct Corpus {
  StaffRegistry staff;
  std::vector<Publication> publications;
  JournalTable journals;
  FundingTable funding;
  disambiguation::AffiliationDictionary affiliations;
  std::vector<LineDiagnostic> warnings;
};

/// Parses and validates all five files. Every schema problem in every file is
/// collected before an InputError is thrown. Referential problems (unknown
/// journal, funding row for an unknown university) become warnings; such
/// funding rows are skipped.
Corpus ingest(const InputTexts& texts);
Corpus ingest(const InputPaths& paths);

/// Reads a filled-in manual-review export. Rows whose resolved_staff_id is
/// empty are skipped; "-" records the position as not staff.
std::vector<disambiguation::ManualOverride> read_overrides(const std::string& content, const std::string& name);

/// Column order of the manual-review export and the override file.
inline const std::vector<std::string> kReviewColumns{"pub_id", "position", "raw_token", "candidates",
                                                     "resolved_staff_id"};

}  // namespace resprod::ingest
