#pragma once

// Independent reference solvers used only by tests. Nothing here calls into
// the simplex implementation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace resprod::oracle {

enum class Rel { le, eq, ge };

struct Row {
  std::vector<double> a;
  Rel rel;
  double b;
};

/// max/min c.x subject to rows, x >= 0.
struct SmallLp {
  bool maximize = true;
  std::vector<double> c;
  std::vector<Row> rows;
};

enum class Verdict { optimal, infeasible, unbounded };

struct OracleResult {
  Verdict verdict = Verdict::infeasible;
  double objective = 0.0;
};

namespace detail {

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m,
                                                       std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-10) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

inline bool feasible(const std::vector<Row>& rows, const std::vector<double>& x, double tol) {
  for (const auto& r : rows) {
    double lhs = 0.0;
    double mag = std::abs(r.b);
    for (std::size_t j = 0; j < x.size(); ++j) {
      lhs += r.a[j] * x[j];
      mag += std::abs(r.a[j] * x[j]);
    }
    const double s = tol * std::max(1.0, mag);
    if (r.rel == Rel::le && lhs > r.b + s) return false;
    if (r.rel == Rel::ge && lhs < r.b - s) return false;
    if (r.rel == Rel::eq && std::abs(lhs - r.b) > s) return false;
  }
  return true;
}

// Best objective over vertices of {rows} ∩ {x >= 0} ∩ (optional box x <= cap).
inline std::optional<double> best_vertex(const SmallLp& lp, std::optional<double> cap) {
  const std::size_t n = lp.c.size();
  std::vector<Row> all = lp.rows;
  for (std::size_t j = 0; j < n; ++j) {
    Row r{std::vector<double>(n, 0.0), Rel::ge, 0.0};
    r.a[j] = 1.0;
    all.push_back(r);
    if (cap) {
      Row u{std::vector<double>(n, 0.0), Rel::le, *cap};
      u.a[j] = 1.0;
      all.push_back(u);
    }
  }
  std::optional<double> best;
  const std::size_t k = all.size();
  if (k < n) return best;
  // Enumerate n-subsets of the hyperplanes via a selection mask.
  std::vector<bool> pick(k, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    std::vector<std::vector<double>> m;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < k; ++i) {
      if (!pick[i]) continue;
      m.push_back(all[i].a);
      rhs.push_back(all[i].b);
    }
    auto x = solve_square(m, rhs);
    if (!x || !feasible(all, *x, 1e-9)) continue;
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += lp.c[j] * (*x)[j];
    if (!best || (lp.maximize ? obj > *best : obj < *best)) best = obj;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace detail

/// Vertex enumeration. The LP is unbounded exactly when adding a large box
/// improves on the best vertex of the unboxed polyhedron (x >= 0 keeps it pointed).
inline OracleResult enumerate_vertices(const SmallLp& lp, double cap = 1e6) {
  OracleResult out;
  const auto boxed = detail::best_vertex(lp, cap);
  if (!boxed) return out;
  const auto free = detail::best_vertex(lp, std::nullopt);
  const double slack = 1e-6 * std::max(1.0, std::abs(*boxed));
  if (!free || (lp.maximize ? *boxed > *free + slack : *boxed < *free - slack)) {
    out.verdict = Verdict::unbounded;
    return out;
  }
  out.verdict = Verdict::optimal;
  out.objective = *free;
  return out;
}

/// One-input/one-output CRS efficiency by the productivity-ratio formula.
inline double ratio_crs_score(const std::vector<double>& x, const std::vector<double>& y,
                              std::size_t k) {
  double best = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) best = std::max(best, y[j] / x[j]);
  return (y[k] / x[k]) / best;
}

enum class Returns { crs, vrs, nirs };

/// Output-oriented envelopment LP written out independently and solved by
/// vertex enumeration. Variables: phi, lambda_1..lambda_n. Returns phi.
inline double envelopment_phi(const std::vector<std::vector<double>>& inputs,
                              const std::vector<std::vector<double>>& outputs, std::size_t k,
                              Returns returns) {
  const std::size_t n = inputs.size();
  SmallLp lp;
  lp.maximize = true;
  lp.c.assign(n + 1, 0.0);
  lp.c[0] = 1.0;
  for (std::size_t i = 0; i < inputs[0].size(); ++i) {
    Row r{std::vector<double>(n + 1, 0.0), Rel::le, inputs[k][i]};
    for (std::size_t j = 0; j < n; ++j) r.a[j + 1] = inputs[j][i];
    lp.rows.push_back(r);
  }
  for (std::size_t o = 0; o < outputs[0].size(); ++o) {
    Row r{std::vector<double>(n + 1, 0.0), Rel::ge, 0.0};
    r.a[0] = -outputs[k][o];
    for (std::size_t j = 0; j < n; ++j) r.a[j + 1] = outputs[j][o];
    lp.rows.push_back(r);
  }
  if (returns != Returns::crs) {
    Row r{std::vector<double>(n + 1, 1.0), returns == Returns::vrs ? Rel::eq : Rel::le, 1.0};
    r.a[0] = 0.0;
    lp.rows.push_back(r);
  }
  const auto res = enumerate_vertices(lp);
  return res.verdict == Verdict::optimal ? res.objective
                                         : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace resprod::oracle
