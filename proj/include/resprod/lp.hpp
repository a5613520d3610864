#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace resprod::lp {

enum class Sense { maximize, minimize };
enum class Relation { less_equal, equal, greater_equal };

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

/// Dense LP. Empty `lower_bounds` means every variable is >= 0; a lower bound
/// of -infinity makes the variable free (or bounded only from above).
struct LinearProgram {
  Sense sense = Sense::maximize;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<double> lower_bounds;
  std::vector<std::optional<double>> upper_bounds;

  std::size_t num_variables() const noexcept { return objective.size(); }
  double lower_bound(std::size_t j) const;
  std::optional<double> upper_bound(std::size_t j) const;
};

enum class Status { optimal, infeasible, unbounded };

std::string_view to_string(Status status) noexcept;

struct Solution {
  Status status = Status::infeasible;
  double objective = 0.0;
  std::vector<double> values;
  int iterations = 0;
};

struct SimplexOptions {
  /// Smallest magnitude accepted as a pivot element or as an improving reduced cost.
  double pivot_tolerance = 1e-9;
  /// Phase-one residual and constraint re-substitution check, relative to row scale.
  double feasibility_tolerance = 1e-6;
  int max_iterations = 200000;
};

/// Two-phase primal simplex on a dense tableau with Bland's rule.
///
/// Throws StructuralError on dimension mismatch or non-finite data, and
/// InvariantViolation if the iteration cap is hit or an "optimal" answer fails
/// re-substitution.
Solution solve(const LinearProgram& lp, const SimplexOptions& options = {});

/// Largest violation of any constraint or bound by `x`, scaled per row by
/// max(1, |rhs|, sum |a_j x_j|).
double max_scaled_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace resprod::lp
