#include "resprod/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "resprod/errors.hpp"

namespace resprod::lp {

double LinearProgram::lower_bound(std::size_t j) const {
  return lower_bounds.empty() ? 0.0 : lower_bounds[j];
}

std::optional<double> LinearProgram::upper_bound(std::size_t j) const {
  if (upper_bounds.empty()) return std::nullopt;
  return upper_bounds[j];
}

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::optimal:
      return "optimal";
    case Status::infeasible:
      return "infeasible";
    case Status::unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  auto fail = [](const std::string& msg) { throw StructuralError("linear program: " + msg); };
  if (n == 0) fail("no variables");
  for (double c : lp.objective) {
    if (!std::isfinite(c)) fail("non-finite objective coefficient");
  }
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& row = lp.constraints[i];
    if (row.coefficients.size() != n) {
      std::ostringstream os;
      os << "constraint " << i << " has " << row.coefficients.size()
         << " coefficients, expected " << n;
      fail(os.str());
    }
    for (double a : row.coefficients) {
      if (!std::isfinite(a)) fail("non-finite coefficient in constraint " + std::to_string(i));
    }
    if (!std::isfinite(row.rhs)) fail("non-finite right-hand side in constraint " + std::to_string(i));
  }
  if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n) fail("lower bound count mismatch");
  if (!lp.upper_bounds.empty() && lp.upper_bounds.size() != n) fail("upper bound count mismatch");
  for (double l : lp.lower_bounds) {
    if (std::isnan(l) || l == kInf) fail("invalid lower bound");
  }
  for (const auto& u : lp.upper_bounds) {
    if (u && (std::isnan(*u) || *u == -kInf)) fail("invalid upper bound");
  }
}

// x_var = offset[var] + sum over columns c of var: sign_c * x'_c, with x' >= 0.
struct ColumnMap {
  std::size_t var;
  double sign;
};

struct StandardForm {
  std::vector<ColumnMap> columns;
  std::vector<double> offsets;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> relations;
  std::vector<double> rhs;
  std::vector<double> cost;  // minimization costs over columns
};

StandardForm to_standard_form(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  StandardForm sf;
  sf.offsets.assign(n, 0.0);
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound)

  for (std::size_t j = 0; j < n; ++j) {
    const double l = lp.lower_bound(j);
    std::optional<double> u = lp.upper_bound(j);
    if (u && *u == kInf) u.reset();
    if (std::isfinite(l)) {
      sf.offsets[j] = l;
      sf.columns.push_back({j, 1.0});
      if (u) upper_rows.emplace_back(sf.columns.size() - 1, *u - l);
    } else if (u) {
      sf.offsets[j] = *u;
      sf.columns.push_back({j, -1.0});
    } else {
      sf.columns.push_back({j, 1.0});
      sf.columns.push_back({j, -1.0});
    }
  }

  const std::size_t ncols = sf.columns.size();
  const double direction = lp.sense == Sense::minimize ? 1.0 : -1.0;
  sf.cost.resize(ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    sf.cost[c] = direction * lp.objective[sf.columns[c].var] * sf.columns[c].sign;
  }

  for (const auto& con : lp.constraints) {
    std::vector<double> row(ncols);
    double shift = 0.0;
    for (std::size_t c = 0; c < ncols; ++c) {
      row[c] = con.coefficients[sf.columns[c].var] * sf.columns[c].sign;
    }
    for (std::size_t j = 0; j < n; ++j) shift += con.coefficients[j] * sf.offsets[j];
    sf.rows.push_back(std::move(row));
    sf.relations.push_back(con.relation);
    sf.rhs.push_back(con.rhs - shift);
  }
  for (const auto& [col, bound] : upper_rows) {
    std::vector<double> row(ncols, 0.0);
    row[col] = 1.0;
    sf.rows.push_back(std::move(row));
    sf.relations.push_back(Relation::less_equal);
    sf.rhs.push_back(bound);
  }
  return sf;
}

class Tableau {
 public:
  Tableau(const StandardForm& sf, const SimplexOptions& options) : options_(options) {
    const std::size_t m = sf.rows.size();
    structural_ = sf.columns.size();

    std::vector<std::vector<double>> rows = sf.rows;
    std::vector<Relation> rel = sf.relations;
    std::vector<double> rhs = sf.rhs;
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (rhs[i] < 0.0) {
        for (double& a : rows[i]) a = -a;
        rhs[i] = -rhs[i];
        if (rel[i] == Relation::less_equal) {
          rel[i] = Relation::greater_equal;
        } else if (rel[i] == Relation::greater_equal) {
          rel[i] = Relation::less_equal;
        }
      }
      if (rel[i] != Relation::equal) ++slacks;
      if (rel[i] != Relation::less_equal) ++artificials;
    }
    artificial_begin_ = structural_ + slacks;
    width_ = artificial_begin_ + artificials + 1;
    rhs_col_ = width_ - 1;
    data_.assign(m * width_, 0.0);
    basis_.assign(m, 0);
    rows_ = m;

    std::size_t next_slack = structural_;
    std::size_t next_art = artificial_begin_;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < structural_; ++c) at(i, c) = rows[i][c];
      at(i, rhs_col_) = rhs[i];
      switch (rel[i]) {
        case Relation::less_equal:
          at(i, next_slack) = 1.0;
          basis_[i] = next_slack++;
          break;
        case Relation::greater_equal:
          at(i, next_slack++) = -1.0;
          at(i, next_art) = 1.0;
          basis_[i] = next_art++;
          break;
        case Relation::equal:
          at(i, next_art) = 1.0;
          basis_[i] = next_art++;
          break;
      }
      rhs_scale_ = std::max(rhs_scale_, std::abs(rhs[i]));
    }
  }

  bool has_artificials() const { return artificial_begin_ + 1 < width_; }

  void set_costs(const std::vector<double>& cost) {
    z_.assign(width_, 0.0);
    for (std::size_t c = 0; c < cost.size(); ++c) z_[c] = cost[c];
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = z_[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) z_[c] -= cb * at(i, c);
    }
  }

  std::vector<double> phase_one_costs() const {
    std::vector<double> cost(width_ - 1, 0.0);
    for (std::size_t c = artificial_begin_; c + 1 < width_; ++c) cost[c] = 1.0;
    return cost;
  }

  /// Runs pivots until optimal; false means unbounded.
  bool iterate(std::size_t allowed_end) {
    for (;;) {
      std::size_t entering = allowed_end;
      for (std::size_t c = 0; c < allowed_end; ++c) {
        if (z_[c] < -options_.pivot_tolerance) {
          entering = c;
          break;
        }
      }
      if (entering == allowed_end) return true;

      std::size_t leaving = rows_;
      double best = kInf;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, entering);
        if (a <= options_.pivot_tolerance) continue;
        const double ratio = std::max(at(i, rhs_col_), 0.0) / a;
        const double tie = 1e-12 * std::max(1.0, std::abs(best));
        if (leaving == rows_ || ratio < best - tie ||
            (ratio <= best + tie && basis_[i] < basis_[leaving])) {
          if (leaving == rows_ || ratio < best - tie) best = ratio;
          leaving = i;
        }
      }
      if (leaving == rows_) return false;
      pivot(leaving, entering);
    }
  }

  double phase_objective() const { return -z_[rhs_col_]; }
  double rhs_scale() const { return std::max(1.0, rhs_scale_); }

  /// Pivots basic artificials out after phase one; drops rows that are redundant.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_;) {
      if (basis_[i] < artificial_begin_) {
        ++i;
        continue;
      }
      std::size_t col = artificial_begin_;
      double best = options_.pivot_tolerance;
      for (std::size_t c = 0; c < artificial_begin_; ++c) {
        if (std::abs(at(i, c)) > best) {
          best = std::abs(at(i, c));
          col = c;
        }
      }
      if (col < artificial_begin_) {
        at(i, rhs_col_) = 0.0;
        pivot(i, col);
        ++i;
      } else {
        remove_row(i);
      }
    }
  }

  std::size_t artificial_begin() const { return artificial_begin_; }
  std::size_t column_count() const { return width_ - 1; }
  int iterations() const { return iterations_; }

  std::vector<double> column_values() const {
    std::vector<double> x(structural_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) x[basis_[i]] = std::max(at(i, rhs_col_), 0.0);
    }
    return x;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return data_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * width_ + j]; }

  void pivot(std::size_t r, std::size_t q) {
    if (++iterations_ > options_.max_iterations) {
      throw InvariantViolation("simplex: iteration limit reached");
    }
    const double p = at(r, q);
    for (std::size_t c = 0; c < width_; ++c) at(r, c) /= p;
    at(r, q) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, q);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) at(i, c) -= f * at(r, c);
      at(i, q) = 0.0;
    }
    const double f = z_[q];
    if (f != 0.0) {
      for (std::size_t c = 0; c < width_; ++c) z_[c] -= f * at(r, c);
      z_[q] = 0.0;
    }
    basis_[r] = q;
  }

  void remove_row(std::size_t r) {
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * width_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  SimplexOptions options_;
  std::size_t structural_ = 0;
  std::size_t artificial_begin_ = 0;
  std::size_t width_ = 0;
  std::size_t rhs_col_ = 0;
  std::size_t rows_ = 0;
  double rhs_scale_ = 0.0;
  int iterations_ = 0;
  std::vector<double> data_;
  std::vector<double> z_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const LinearProgram& lp, const SimplexOptions& options) {
  validate(lp);
  const StandardForm sf = to_standard_form(lp);
  Tableau tableau(sf, options);

  Solution out;
  if (tableau.has_artificials()) {
    tableau.set_costs(tableau.phase_one_costs());
    tableau.iterate(tableau.column_count());
    if (tableau.phase_objective() > options.feasibility_tolerance * tableau.rhs_scale()) {
      out.status = Status::infeasible;
      out.iterations = tableau.iterations();
      return out;
    }
    tableau.expel_artificials();
  }

  tableau.set_costs(sf.cost);
  const bool bounded = tableau.iterate(tableau.artificial_begin());
  out.iterations = tableau.iterations();
  if (!bounded) {
    out.status = Status::unbounded;
    return out;
  }

  const std::vector<double> cols = tableau.column_values();
  out.values = sf.offsets;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out.values[sf.columns[c].var] += sf.columns[c].sign * cols[c];
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) out.objective += lp.objective[j] * out.values[j];
  out.status = Status::optimal;

  const double violation = max_scaled_violation(lp, out.values);
  if (violation > options.feasibility_tolerance) {
    std::ostringstream os;
    os << "simplex: optimal point violates constraints by " << violation;
    throw InvariantViolation(os.str());
  }
  return out;
}

double max_scaled_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& con : lp.constraints) {
    double lhs = 0.0;
    double mag = std::abs(con.rhs);
    for (std::size_t j = 0; j < x.size(); ++j) {
      lhs += con.coefficients[j] * x[j];
      mag += std::abs(con.coefficients[j] * x[j]);
    }
    const double scale = std::max(1.0, mag);
    double v = 0.0;
    switch (con.relation) {
      case Relation::less_equal:
        v = lhs - con.rhs;
        break;
      case Relation::greater_equal:
        v = con.rhs - lhs;
        break;
      case Relation::equal:
        v = std::abs(lhs - con.rhs);
        break;
    }
    worst = std::max(worst, v / scale);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double l = lp.lower_bound(j);
    if (std::isfinite(l)) worst = std::max(worst, (l - x[j]) / std::max(1.0, std::abs(l)));
    if (const auto u = lp.upper_bound(j); u && std::isfinite(*u)) {
      worst = std::max(worst, (x[j] - *u) / std::max(1.0, std::abs(*u)));
    }
  }
  return worst;
}

}  // namespace resprod::lp
