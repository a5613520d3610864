#include "resprod/records.hpp"

#include <algorithm>

#include "resprod/errors.hpp"
#include "resprod/text.hpp"

namespace resprod {

std::optional<Rank> parse_rank(std::string_view code) {
  const std::string c = text::normalize(code);
  if (c == "FP") return Rank::full_professor;
  if (c == "AP") return Rank::associate_professor;
  if (c == "RF") return Rank::research_fellow;
  return std::nullopt;
}

std::string_view to_code(Rank rank) noexcept {
  switch (rank) {
    case Rank::full_professor:
      return "FP";
    case Rank::associate_professor:
      return "AP";
    case Rank::research_fellow:
      return "RF";
  }
  return "?";
}

StaffRegistry::StaffRegistry(std::vector<StaffMember> members) : members_(std::move(members)) {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& m = members_[i];
    if (!by_id_.emplace(m.id, i).second) throw StructuralError("duplicate staff id " + m.id);
    if (m.year_from > m.year_to) throw StructuralError("staff " + m.id + " has an empty active range");
    if (i == 0) {
      first_year_ = m.year_from;
      last_year_ = m.year_to;
    } else {
      first_year_ = std::min(first_year_, m.year_from);
      last_year_ = std::max(last_year_, m.year_to);
    }
  }
}

const StaffMember* StaffRegistry::find(const StaffId& id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &members_[it->second];
}

bool StaffRegistry::covers(int year) const noexcept {
  return first_year_ <= year && year <= last_year_;
}

std::set<UniversityId> StaffRegistry::universities() const {
  std::set<UniversityId> out;
  for (const auto& m : members_) out.insert(m.university);
  return out;
}

std::set<AreaId, NaturalLess> StaffRegistry::areas() const {
  std::set<AreaId, NaturalLess> out;
  for (const auto& m : members_) out.insert(m.area);
  return out;
}

DocType parse_doc_type(std::string_view raw) {
  const std::string t = text::normalize(raw);
  if (t == "ARTICLE") return DocType::article;
  if (t == "REVIEW") return DocType::review;
  return DocType::other;
}

std::string_view to_string(DocType type) noexcept {
  switch (type) {
    case DocType::article:
      return "article";
    case DocType::review:
      return "review";
    case DocType::other:
      return "other";
  }
  return "other";
}

void JournalTable::set(const JournalId& journal, int year, double weight) {
  weights_[journal][year] = weight;
}

std::optional<double> JournalTable::weight(const JournalId& journal, int year) const {
  const auto j = weights_.find(journal);
  if (j == weights_.end()) return std::nullopt;
  const auto y = j->second.find(year);
  if (y == j->second.end()) return std::nullopt;
  return y->second;
}

bool JournalTable::knows(const JournalId& journal) const { return weights_.count(journal) != 0; }

void FundingTable::add(const FundingRecord& record) {
  amounts_[{DmuId{record.university, record.area}, record.year}] += record.prin_keur;
  years_.insert(record.year);
}

double FundingTable::amount(const UniversityId& university, const AreaId& area, int year) const {
  const auto it = amounts_.find({DmuId{university, area}, year});
  return it == amounts_.end() ? 0.0 : it->second;
}

}  // namespace resprod
