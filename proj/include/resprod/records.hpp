#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "resprod/types.hpp"

namespace resprod {

/// Staff categories used as separate DEA inputs.
enum class Rank { full_professor, associate_professor, research_fellow };

std::optional<Rank> parse_rank(std::string_view code);
std::string_view to_code(Rank rank) noexcept;

struct StaffMember {
  StaffId id;
  std::string surname;
  std::string first_names;
  Rank rank = Rank::research_fellow;
  UniversityId university;
  AreaId area;
  int year_from = 0;
  int year_to = 0;

  bool active_in(int year) const noexcept { return year_from <= year && year <= year_to; }
};

/// Staff list indexed by id. Ids are unique; coverage spans the earliest
/// `year_from` to the latest `year_to`.
class StaffRegistry {
 public:
  StaffRegistry() = default;
  explicit StaffRegistry(std::vector<StaffMember> members);

  const std::vector<StaffMember>& members() const noexcept { return members_; }
  const StaffMember* find(const StaffId& id) const;
  bool covers(int year) const noexcept;
  std::set<UniversityId> universities() const;
  std::set<AreaId, NaturalLess> areas() const;

 private:
  std::vector<StaffMember> members_;
  std::map<StaffId, std::size_t> by_id_;
  int first_year_ = 0;
  int last_year_ = -1;
};

enum class DocType { article, review, other };

DocType parse_doc_type(std::string_view raw);
std::string_view to_string(DocType type) noexcept;

struct Publication {
  PublicationId id;
  int year = 0;
  DocType doc_type = DocType::article;
  JournalId journal;
  /// Raw "SURNAME,INITIALS" tokens in byline order.
  std::vector<std::string> authors;
  std::vector<std::string> raw_affiliations;

  /// Total number of authors (c).
  std::size_t author_count() const noexcept { return authors.size(); }
  bool counts_as_output() const noexcept {
    return doc_type == DocType::article || doc_type == DocType::review;
  }
};

/// Impact weight per journal and year.
class JournalTable {
 public:
  void set(const JournalId& journal, int year, double weight);
  /// nullopt when the journal or that year has no weight.
  std::optional<double> weight(const JournalId& journal, int year) const;
  bool knows(const JournalId& journal) const;

 private:
  std::map<JournalId, std::map<int, double>> weights_;
};

struct FundingRecord {
  UniversityId university;
  AreaId area;
  int year = 0;
  double prin_keur = 0.0;
};

/// PRIN amounts keyed by (university, area, year); repeated keys accumulate.
class FundingTable {
 public:
  void add(const FundingRecord& record);
  /// Zero when the cell has no record for that year.
  double amount(const UniversityId& university, const AreaId& area, int year) const;
  bool covers(int year) const { return years_.count(year) != 0; }
  const std::set<int>& years() const noexcept { return years_; }

 private:
  std::map<std::pair<DmuId, int>, double> amounts_;
  std::set<int> years_;
};

}  // namespace resprod
