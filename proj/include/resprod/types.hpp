#pragma once

#include <compare>
#include <string>

namespace resprod {

using UniversityId = std::string;
using AreaId = std::string;
using StaffId = std::string;
using PublicationId = std::string;
using JournalId = std::string;

/// A decision-making unit: one university's activity within one disciplinary area.
struct DmuId {
  UniversityId university;
  AreaId area;

  std::string to_string() const { return university + "/" + area; }
  auto operator<=>(const DmuId&) const = default;
};

/// Ordering for identifiers that treats digit runs numerically ("UDA2" < "UDA10").
bool natural_less(const std::string& a, const std::string& b);

struct NaturalLess {
  bool operator()(const std::string& a, const std::string& b) const { return natural_less(a, b); }
};

}  // namespace resprod
