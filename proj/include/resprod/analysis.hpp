#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resprod/dea.hpp"
#include "resprod/types.hpp"

namespace resprod::analysis {

struct ScoredDmu {
  DmuId id;
  double score = 0.0;
};

struct NormalizedScore {
  DmuId id;
  double score = 0.0;
  double theta = 0.0;  // score / mean score of the area
};

/// theta = score / area mean, computed per area. Output keeps input order.
/// Throws InvariantViolation when an area mean is not positive and
/// StructuralError for a non-finite or negative score.
std::vector<NormalizedScore> normalize_scores(std::span<const ScoredDmu> scores);

struct AreaContribution {
  AreaId area;
  double theta = 0.0;
  double staff = 0.0;  // R = FP + AP + RF
};

struct GlobalIndex {
  UniversityId university;
  double theta_tot = 0.0;
  std::vector<AreaContribution> areas;  // in input order
};

struct GlobalIndexResult {
  std::vector<GlobalIndex> universities;  // sorted naturally by id
  std::vector<std::string> notices;       // universities dropped for zero total staff
};

/// Staff-weighted mean of theta per university: sum(theta R) / sum(R).
/// Throws StructuralError when a theta has no staff entry or R < 0.
GlobalIndexResult global_index(std::span<const NormalizedScore> thetas, const std::map<DmuId, double>& staff);

enum class Direction { descending, ascending };

/// Competition ranking ("1224"): tied values share the best rank and the next
/// distinct value skips the tied positions. Values within `tie_tolerance` of the
/// first value of a tie group join it. Throws StructuralError for non-finite input.
std::vector<int> rank(std::span<const double> values, Direction direction = Direction::descending,
                      double tie_tolerance = 0.0);

struct TertileSummary {
  std::size_t units = 0;
  std::size_t efficient = 0;
  std::array<std::size_t, 3> sizes{};
  std::array<std::optional<double>, 3> means{};  // empty for a missing tertile
};

/// Efficient units have score >= 1 - epsilon. The rest are sorted descending
/// and cut into three groups whose sizes differ by at most one, larger first.
TertileSummary tertile_summary(std::span<const double> scores, double epsilon = 1e-6);

/// PU / (FP + AP + RF); nullopt when staff is not positive.
std::optional<double> partial_productivity(double pu, double total_staff);

/// Rank per DMU key.
using Ranking = std::map<std::string, int>;

struct RankingComparison {
  std::map<std::string, int> delta;  // |rank_a - rank_b|
  std::size_t changed = 0;
  int max_delta = 0;
  double mean_delta = 0.0;
  double median_delta = 0.0;
  double variation_coefficient = 0.0;
  bool variation_coefficient_defined = false;  // false when mean delta is 0
  std::optional<std::size_t> no_longer_efficient;
};

/// Throws StructuralError when the two rankings cover different keys or are empty.
RankingComparison compare_rankings(const Ranking& a, const Ranking& b);

struct SensitivityRow {
  DmuId id;
  double pte_before = 0.0;
  double pte_after = 0.0;
  int rank_before = 0;
  int rank_after = 0;
};

struct SensitivityResult {
  std::string dropped_input;
  std::vector<SensitivityRow> rows;  // problem order
  RankingComparison comparison;      // keyed by DmuId::to_string()
  std::size_t efficient_before = 0;
  std::size_t efficient_after = 0;
};

struct SensitivityOptions {
  double epsilon = 1e-6;  // efficiency threshold and rank tie tolerance
  dea::Options dea{};
};

/// Solves the VRS model with and without `input_label` and compares the
/// resulting PTE rankings. Throws StructuralError when the label is unknown
/// or would leave no input.
SensitivityResult sensitivity_drop_input(const dea::DeaProblem& problem, std::string_view input_label,
                                         const SensitivityOptions& options = {});

/// Ranking of DMUs by score keyed by DmuId::to_string().
Ranking ranking_of(std::span<const ScoredDmu> scores, double tie_tolerance = 0.0);

}  // namespace resprod::analysis
