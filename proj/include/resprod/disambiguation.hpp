#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resprod/records.hpp"
#include "resprod/types.hpp"

namespace resprod::disambiguation {

/// Maps spelling variants of institution names to canonical university ids.
///
/// Patterns are stored normalized (see text::normalize). A raw affiliation
/// matches a pattern when the pattern's words occur as a contiguous run of the
/// affiliation's words; the longest matching pattern wins, then the earliest
/// position, then the lexicographically smallest pattern.
class AffiliationDictionary {
 public:
  /// Throws StructuralError if the normalized pattern already maps elsewhere,
  /// or if it normalizes to nothing.
  void add(std::string_view raw_pattern, const UniversityId& university);

  std::optional<UniversityId> lookup(std::string_view raw_affiliation) const;
  std::size_t size() const noexcept { return patterns_.size(); }
  std::set<UniversityId> universities() const;

 private:
  struct Pattern {
    std::vector<std::string> words;
    UniversityId university;
  };
  std::map<std::string, Pattern> patterns_;
};

std::optional<UniversityId> canonicalize_affiliation(std::string_view raw,
                                                     const AffiliationDictionary& dict);

/// Normalized surname plus ordered initials as coded in bibliographic bylines.
struct AuthorToken {
  std::string surname;
  std::string initials;  // one upper-case letter per given name, never empty
};

/// Parses "ROSSI, M.A.", "ROSSI,MA" or "Rossi, Maria Anna". nullopt when the
/// surname or initials are missing.
std::optional<AuthorToken> parse_author_token(std::string_view raw);

enum class OutcomeKind { matched, ambiguous, unmatched };

struct MatchOutcome {
  OutcomeKind kind = OutcomeKind::unmatched;
  std::vector<StaffId> candidates;  // exactly one when matched

  static MatchOutcome matched(StaffId id) { return {OutcomeKind::matched, {std::move(id)}}; }
  static MatchOutcome unmatched() { return {}; }
  bool operator==(const MatchOutcome&) const = default;
};

std::string_view to_string(OutcomeKind kind) noexcept;

/// Rule cascade over staff already restricted to the publication's
/// universities and year:
///   1. candidates share a surname variant and the first initial;
///   2. with several token initials, drop candidates whose initials disagree
///      letter by letter; if some candidate carries every token initial, also
///      drop candidates with fewer given names than the token has initials;
///   3. one left -> matched, several -> ambiguous, none -> unmatched.
MatchOutcome match_author(const AuthorToken& token, std::span<const StaffMember* const> staff_in_scope);

/// Staff of `universities` active in `year`.
std::vector<const StaffMember*> staff_in_scope(const StaffRegistry& registry,
                                               const std::vector<UniversityId>& universities, int year);

struct Assignment {
  PublicationId publication;
  std::size_t position = 0;  // 1-based byline position
  std::string raw_token;
  MatchOutcome outcome;
  bool from_override = false;
};

enum class Category { resolved, manual_review, discarded, unresolvable };

std::string_view to_string(Category category) noexcept;

struct PublicationOutcome {
  PublicationId publication;
  std::vector<UniversityId> affiliations;  // canonical, sorted, unique
  Category category = Category::discarded;
  std::string error;  // set for unresolvable records
};

struct DisambiguationStats {
  std::size_t total = 0;
  std::size_t resolved = 0;
  std::size_t manual_review = 0;
  std::size_t discarded = 0;
  std::size_t unresolvable = 0;

  bool partitions() const noexcept {
    return resolved + manual_review + discarded + unresolvable == total;
  }
  bool operator==(const DisambiguationStats&) const = default;
};

/// One row of the manual-review export.
struct ReviewRow {
  PublicationId publication;
  std::size_t position = 0;
  std::string raw_token;
  std::vector<StaffId> candidates;
};

/// A reviewer's decision for one byline position; no staff id means "not staff".
struct ManualOverride {
  PublicationId publication;
  std::size_t position = 0;
  std::optional<StaffId> staff;
};

struct CorpusResult {
  std::vector<Assignment> assignments;
  std::vector<PublicationOutcome> publications;
  DisambiguationStats stats;
  std::vector<ReviewRow> manual_review;
  std::vector<std::string> warnings;
};

/// Classifies every publication: a record with no authors or an unparseable
/// token is unresolvable; any ambiguous token sends it to manual review;
/// otherwise it is resolved when at least one author matched and discarded when
/// none did. Overrides are applied before the rules; an override naming an
/// unknown staff member or one outside the publication's universities is
/// ignored with a warning.
CorpusResult disambiguate_corpus(const std::vector<Publication>& publications,
                                 const StaffRegistry& registry, const AffiliationDictionary& dict,
                                 const std::vector<ManualOverride>& overrides = {});

}  // namespace resprod::disambiguation
