#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "resprod/lp.hpp"
#include "resprod/types.hpp"

namespace resprod::dea {

struct DmuRecord {
  DmuId id;
  std::vector<double> inputs;
  std::vector<double> outputs;
};

/// Immutable set of DMUs sharing input/output labels.
///
/// Construction checks dimensions, finiteness and non-negativity. DMUs with
/// all-zero outputs are allowed here (they can serve as references) but cannot
/// be evaluated; see `degenerate_dmus`.
class DeaProblem {
 public:
  DeaProblem(std::vector<DmuRecord> dmus, std::vector<std::string> input_labels,
             std::vector<std::string> output_labels);

  const std::vector<DmuRecord>& dmus() const noexcept { return dmus_; }
  const std::vector<std::string>& input_labels() const noexcept { return input_labels_; }
  const std::vector<std::string>& output_labels() const noexcept { return output_labels_; }
  std::size_t size() const noexcept { return dmus_.size(); }

  /// Indices of DMUs with no strictly positive output.
  std::vector<std::size_t> degenerate_dmus() const;

  /// Copy of the problem with one input column removed. Throws StructuralError
  /// for an unknown label or when no input would remain.
  DeaProblem without_input(std::string_view label) const;

 private:
  std::vector<DmuRecord> dmus_;
  std::vector<std::string> input_labels_;
  std::vector<std::string> output_labels_;
};

enum class Regime { crs, vrs, nirs };
enum class ReturnsToScale { constant, increasing, decreasing };

std::string_view to_string(Regime regime) noexcept;
std::string_view to_string(ReturnsToScale rts) noexcept;

struct Options {
  /// |te - pte| below this counts as constant returns; also the phi-ordering slack.
  double classification_tolerance = 1e-6;
  /// Peers are reported for lambda above this.
  double intensity_tolerance = 1e-9;
  lp::SimplexOptions simplex{};
};

struct RadialSolution {
  double phi = 1.0;
  std::vector<double> intensities;
};

/// Output-oriented radial envelopment program for one DMU:
///   max phi  s.t.  sum_j l_j x_ij <= x_i0,  sum_j l_j y_rj >= phi y_r0,  l >= 0
/// with sum l = 1 (VRS) or sum l <= 1 (NIRS).
///
/// Columns are rescaled by their maximum before solving, which leaves phi unchanged.
/// Throws DegenerateDmuError when phi is unbounded and InvariantViolation when
/// the program is infeasible or phi < 1.
RadialSolution solve_output_oriented(const DeaProblem& problem, std::size_t dmu_index,
                                     Regime regime, const Options& options = {});

/// Reciprocal of the radial expansion factor. Throws InvariantViolation for phi < 1.
double efficiency_score(double phi);

struct Peer {
  DmuId id;
  double intensity = 0.0;
};

struct EfficiencyResult {
  DmuId id;
  double phi_crs = 1.0;
  double phi_vrs = 1.0;
  double phi_nirs = 1.0;
  double te = 1.0;
  double pte = 1.0;
  double se = 1.0;
  double te_nirs = 1.0;
  ReturnsToScale rts = ReturnsToScale::constant;
  std::vector<Peer> peers;  // from the VRS solution
};

ReturnsToScale classify_rts(double te_crs, double te_nirs, double te_vrs, double tolerance = 1e-6);

/// CRS, VRS and NIRS scores for every DMU. Errors from one DMU are rethrown
/// with its id in the message.
std::vector<EfficiencyResult> decompose(const DeaProblem& problem, const Options& options = {});

}  // namespace resprod::dea
