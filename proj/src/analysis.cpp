#include "resprod/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resprod/errors.hpp"

namespace resprod::analysis {

std::vector<NormalizedScore> normalize_scores(std::span<const ScoredDmu> scores) {
  std::map<AreaId, std::pair<double, std::size_t>> sums;
  for (const auto& s : scores) {
    if (!std::isfinite(s.score) || s.score < 0.0) {
      throw StructuralError("score of " + s.id.to_string() + " is not a finite non-negative number");
    }
    auto& [sum, n] = sums[s.id.area];
    sum += s.score;
    ++n;
  }
  std::vector<NormalizedScore> out;
  out.reserve(scores.size());
  for (const auto& s : scores) {
    const auto& [sum, n] = sums.at(s.id.area);
    const double mean = sum / static_cast<double>(n);
    if (!(mean > 0.0)) throw InvariantViolation("area " + s.id.area + " has a zero mean score");
    out.push_back({s.id, s.score, s.score / mean});
  }
  return out;
}

GlobalIndexResult global_index(std::span<const NormalizedScore> thetas, const std::map<DmuId, double>& staff) {
  std::map<UniversityId, GlobalIndex, NaturalLess> by_uni;
  for (const auto& t : thetas) {
    const auto r = staff.find(t.id);
    if (r == staff.end()) throw StructuralError("no staff count for " + t.id.to_string());
    if (!std::isfinite(r->second) || r->second < 0.0) {
      throw StructuralError("staff count of " + t.id.to_string() + " is negative or not finite");
    }
    auto& g = by_uni[t.id.university];
    g.university = t.id.university;
    g.areas.push_back({t.id.area, t.theta, r->second});
  }
  GlobalIndexResult result;
  for (auto& [uni, g] : by_uni) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& a : g.areas) {
      num += a.theta * a.staff;
      den += a.staff;
    }
    if (!(den > 0.0)) {
      result.notices.push_back("university " + uni + " has no staff in its scored areas; excluded from the global index");
      continue;
    }
    g.theta_tot = num / den;
    result.universities.push_back(std::move(g));
  }
  return result;
}

std::vector<int> rank(std::span<const double> values, Direction direction, double tie_tolerance) {
  for (double v : values) {
    if (!std::isfinite(v)) throw StructuralError("cannot rank a non-finite value");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  const double sign = direction == Direction::descending ? -1.0 : 1.0;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sign * values[a] < sign * values[b]; });

  std::vector<int> ranks(values.size());
  std::size_t group_start = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (pos > 0 && std::abs(values[order[pos]] - values[order[group_start]]) > tie_tolerance) group_start = pos;
    ranks[order[pos]] = static_cast<int>(group_start) + 1;
  }
  return ranks;
}

TertileSummary tertile_summary(std::span<const double> scores, double epsilon) {
  TertileSummary t;
  t.units = scores.size();
  std::vector<double> rest;
  for (double s : scores) {
    if (s >= 1.0 - epsilon) {
      ++t.efficient;
    } else {
      rest.push_back(s);
    }
  }
  std::sort(rest.begin(), rest.end(), std::greater<>());
  const std::size_t base = rest.size() / 3;
  const std::size_t extra = rest.size() % 3;
  std::size_t at = 0;
  for (std::size_t g = 0; g < 3; ++g) {
    t.sizes[g] = base + (g < extra ? 1 : 0);
    if (t.sizes[g] == 0) continue;
    double sum = 0.0;
    for (std::size_t k = 0; k < t.sizes[g]; ++k) sum += rest[at++];
    t.means[g] = sum / static_cast<double>(t.sizes[g]);
  }
  return t;
}

std::optional<double> partial_productivity(double pu, double total_staff) {
  if (!(total_staff > 0.0)) return std::nullopt;
  return pu / total_staff;
}

RankingComparison compare_rankings(const Ranking& a, const Ranking& b) {
  if (a.empty()) throw StructuralError("cannot compare empty rankings");
  if (a.size() != b.size() ||
      !std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return x.first == y.first; })) {
    throw StructuralError("rankings cover different DMU sets");
  }
  RankingComparison c;
  std::vector<int> deltas;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    const int d = std::abs(ia->second - ib->second);
    c.delta.emplace(ia->first, d);
    deltas.push_back(d);
    if (d > 0) ++c.changed;
    c.max_delta = std::max(c.max_delta, d);
  }
  const double n = static_cast<double>(deltas.size());
  c.mean_delta = std::accumulate(deltas.begin(), deltas.end(), 0.0) / n;
  std::sort(deltas.begin(), deltas.end());
  const std::size_t mid = deltas.size() / 2;
  c.median_delta = deltas.size() % 2 ? deltas[mid] : 0.5 * (deltas[mid - 1] + deltas[mid]);
  if (c.mean_delta > 0.0) {
    double ss = 0.0;
    for (int d : deltas) ss += (d - c.mean_delta) * (d - c.mean_delta);
    c.variation_coefficient = std::sqrt(ss / n) / c.mean_delta;
    c.variation_coefficient_defined = true;
  }
  return c;
}

Ranking ranking_of(std::span<const ScoredDmu> scores, double tie_tolerance) {
  std::vector<double> v;
  v.reserve(scores.size());
  for (const auto& s : scores) v.push_back(s.score);
  const auto r = rank(v, Direction::descending, tie_tolerance);
  Ranking out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!out.emplace(scores[i].id.to_string(), r[i]).second) {
      throw StructuralError("duplicate DMU " + scores[i].id.to_string() + " in ranking");
    }
  }
  return out;
}

namespace {

std::vector<ScoredDmu> vrs_scores(const dea::DeaProblem& p, const dea::Options& options) {
  std::vector<ScoredDmu> out;
  out.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto sol = dea::solve_output_oriented(p, k, dea::Regime::vrs, options);
    out.push_back({p.dmus()[k].id, dea::efficiency_score(sol.phi)});
  }
  return out;
}

}  // namespace

SensitivityResult sensitivity_drop_input(const dea::DeaProblem& problem, std::string_view input_label,
                                         const SensitivityOptions& options) {
  const dea::DeaProblem reduced = problem.without_input(input_label);
  const auto before = vrs_scores(problem, options.dea);
  const auto after = vrs_scores(reduced, options.dea);

  SensitivityResult r;
  r.dropped_input = std::string(input_label);
  const auto rank_before = ranking_of(before, options.epsilon);
  const auto rank_after = ranking_of(after, options.epsilon);
  r.comparison = compare_rankings(rank_before, rank_after);

  std::size_t lost = 0;
  for (std::size_t k = 0; k < before.size(); ++k) {
    const auto key = before[k].id.to_string();
    const bool eff_before = before[k].score >= 1.0 - options.epsilon;
    const bool eff_after = after[k].score >= 1.0 - options.epsilon;
    r.efficient_before += eff_before;
    r.efficient_after += eff_after;
    if (eff_before && !eff_after) ++lost;
    r.rows.push_back({before[k].id, before[k].score, after[k].score, rank_before.at(key), rank_after.at(key)});
  }
  r.comparison.no_longer_efficient = lost;
  return r;
}

}  // namespace resprod::analysis
