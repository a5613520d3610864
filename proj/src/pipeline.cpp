#include "resprod/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "resprod/analysis.hpp"
#include "resprod/errors.hpp"

namespace resprod::pipeline {

using report::Cell;
using report::Table;

std::optional<RegimeSelection> parse_regime(std::string_view s) {
  if (s == "crs") return RegimeSelection::crs;
  if (s == "vrs") return RegimeSelection::vrs;
  if (s == "all") return RegimeSelection::all;
  return std::nullopt;
}

namespace {

void check_labels(const std::vector<std::string>& chosen, const std::vector<std::string>& allowed,
                  const char* what) {
  if (chosen.empty()) throw StructuralError(std::string("at least one ") + what + " must be selected");
  std::set<std::string> seen;
  for (const auto& l : chosen) {
    if (std::find(allowed.begin(), allowed.end(), l) == allowed.end()) {
      throw StructuralError("unknown " + std::string(what) + " " + l);
    }
    if (!seen.insert(l).second) throw StructuralError(std::string(what) + " " + l + " selected twice");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (years.empty()) throw StructuralError("output years must not be empty");
  if (std::set<int>(years.begin(), years.end()).size() != years.size()) {
    throw StructuralError("output years contain duplicates");
  }
  if (lag < 0) throw StructuralError("input lag must not be negative");
  if (!std::isfinite(min_staff) || min_staff < 0) throw StructuralError("staff threshold must be >= 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw StructuralError("efficiency epsilon must lie in (0, 1)");
  check_labels(inputs, bibliometrics::kInputLabels, "input");
  check_labels(outputs, bibliometrics::kOutputLabels, "output");
  for (const auto& d : drop_inputs) {
    if (std::find(inputs.begin(), inputs.end(), d) == inputs.end()) {
      throw StructuralError("sensitivity input " + d + " is not among the selected inputs");
    }
    if (inputs.size() < 2) throw StructuralError("dropping " + d + " would leave no input");
  }
}

VariableStats describe(std::span<const double> values) {
  if (values.empty()) throw StructuralError("cannot describe an empty sample");
  VariableStats s;
  s.n = values.size();
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.ave = sum / static_cast<double>(s.n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.ave) * (v - s.ave);
  s.std_dev = std::sqrt(ss / static_cast<double>(s.n));
  return s;
}

Table descriptive_stats(const std::vector<bibliometrics::CellData>& cells, const std::vector<std::string>& labels) {
  Table t{"descriptive_stats", {"area", "variable", "n", "ave", "min", "max", "std_dev"}, {}};
  std::map<AreaId, std::vector<const bibliometrics::CellData*>, NaturalLess> by_area;
  for (const auto& c : cells) by_area[c.id.area].push_back(&c);
  for (const auto& [area, members] : by_area) {
    for (const auto& label : labels) {
      std::vector<double> v;
      for (const auto* c : members) v.push_back(c->value(label));
      const auto s = describe(v);
      t.add({Cell::str(area), Cell::str(label), Cell::count(static_cast<long long>(s.n)), Cell::num(s.ave),
             Cell::num(s.min), Cell::num(s.max), Cell::num(s.std_dev)});
    }
  }
  return t;
}

namespace {

struct AreaRun {
  AreaOutcome outcome;
  std::optional<dea::DeaProblem> problem;
  std::vector<bibliometrics::Exclusion> excluded;
  std::size_t candidates = 0;
  std::string failure_reason;
};

std::string peers_text(const std::vector<dea::Peer>& peers) {
  std::string s;
  for (const auto& p : peers) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p.intensity);
    if (!s.empty()) s += ';';
    s += p.id.university + ":" + buf;
  }
  return s;
}

Cell optional_mean(const std::optional<double>& v) { return v ? Cell::score(*v) : Cell::none(); }

double mean_of(const std::vector<dea::EfficiencyResult>& r, double dea::EfficiencyResult::*field) {
  double s = 0.0;
  for (const auto& e : r) s += e.*field;
  return s / static_cast<double>(r.size());
}

void add_comparison_cells(std::vector<Cell>& row, const analysis::RankingComparison& c) {
  row.push_back(Cell::count(static_cast<long long>(c.changed)));
  row.push_back(Cell::count(c.max_delta));
  row.push_back(Cell::num(c.mean_delta));
  row.push_back(Cell::num(c.median_delta));
  row.push_back(Cell::num(c.variation_coefficient));
  row.push_back(Cell::str(c.variation_coefficient_defined ? "yes" : "no"));
}

const std::vector<std::string> kComparisonColumns{"variations",    "max_variation", "mean_variation",
                                                  "median_variation", "var_coeff", "var_coeff_defined"};

}  // namespace

PipelineResult run_pipeline(const ingest::Corpus& corpus, const RunConfig& config,
                            const std::vector<disambiguation::ManualOverride>& overrides) {
  config.validate();
  const bool show_crs = config.regime != RegimeSelection::vrs;
  const bool show_vrs = config.regime != RegimeSelection::crs;
  const bool show_all = config.regime == RegimeSelection::all;
  const auto ranked_score = [&](const dea::EfficiencyResult& e) { return show_vrs ? e.pte : e.te; };

  PipelineResult result;
  Table warnings{"warnings", {"source", "line", "message"}, {}};
  for (const auto& w : corpus.warnings) {
    warnings.add({Cell::str(w.file), w.line ? Cell::count(static_cast<long long>(w.line)) : Cell::none(),
                  Cell::str(w.message)});
  }
  Table exclusions{"exclusions", {"kind", "area", "id", "reason", "detail"}, {}};

  // Disambiguation.
  const auto dis = disambiguation::disambiguate_corpus(corpus.publications, corpus.staff, corpus.affiliations,
                                                       overrides);
  result.disambiguation = dis.stats;
  for (const auto& w : dis.warnings) warnings.add({Cell::str("overrides"), Cell::none(), Cell::str(w)});
  for (const auto& p : dis.publications) {
    if (p.category == disambiguation::Category::discarded) {
      exclusions.add({Cell::str("publication"), Cell::none(), Cell::str(p.publication), Cell::str("discarded"),
                      Cell::str("no author matched research staff")});
    } else if (p.category == disambiguation::Category::unresolvable) {
      exclusions.add({Cell::str("publication"), Cell::none(), Cell::str(p.publication), Cell::str("unresolvable"),
                      Cell::str(p.error)});
    }
  }

  // Indicators.
  const auto authorship = bibliometrics::AuthorshipTable::build(corpus.publications, dis.assignments, corpus.staff);
  std::vector<std::string> output_warnings;
  const auto cells = bibliometrics::build_cells(corpus.staff, corpus.funding, authorship, corpus.journals,
                                                config.years, config.lag, &output_warnings);
  for (const auto& w : output_warnings) warnings.add({Cell::str("journals"), Cell::none(), Cell::str(w)});

  // Per-area DEA.
  bibliometrics::AssembleOptions assemble{config.min_staff, config.inputs, config.outputs};
  dea::Options dea_options;
  dea_options.classification_tolerance = config.epsilon;
  std::map<DmuId, const bibliometrics::CellData*> cell_of;
  for (const auto& c : cells) cell_of[c.id] = &c;
  std::map<DmuId, std::string> cell_status;

  std::vector<AreaRun> runs;
  for (const auto& area : corpus.staff.areas()) {
    AreaRun run;
    run.outcome.area = area;
    auto screened = bibliometrics::screen_cells(cells, area, assemble);
    run.candidates = screened.candidates;
    run.excluded = screened.excluded;
    for (const auto& e : screened.excluded) cell_status[e.id] = std::string(bibliometrics::to_string(e.reason));
    for (const auto& k : screened.kept) {
      run.outcome.cells.push_back(*cell_of.at(k.id));
      cell_status[k.id] = "included";
    }
    if (screened.kept.size() < 2) {
      run.outcome.message = "fewer than 2 analyzable DMUs (" + std::to_string(screened.kept.size()) + " of " +
                            std::to_string(screened.candidates) + ")";
      run.failure_reason = "not_analyzable";
    } else {
      try {
        run.problem.emplace(std::move(screened.kept), config.inputs, config.outputs);
        run.outcome.results = dea::decompose(*run.problem, dea_options);
        run.outcome.analyzed = true;
      } catch (const Error& e) {
        run.outcome.message = e.what();
        run.failure_reason = "solver_failure";
        run.outcome.results.clear();
      }
    }
    if (!run.outcome.analyzed) result.partial = true;
    runs.push_back(std::move(run));
  }

  // Normalized scores and the global index over analyzed areas.
  std::vector<analysis::ScoredDmu> scored;
  std::map<DmuId, double> staff;
  std::map<DmuId, int> area_rank;
  for (const auto& run : runs) {
    if (!run.outcome.analyzed) continue;
    std::vector<double> v;
    for (const auto& e : run.outcome.results) {
      scored.push_back({e.id, ranked_score(e)});
      staff[e.id] = cell_of.at(e.id)->inputs.staff();
      v.push_back(ranked_score(e));
    }
    const auto r = analysis::rank(v, analysis::Direction::descending, config.epsilon);
    for (std::size_t i = 0; i < r.size(); ++i) area_rank[run.outcome.results[i].id] = r[i];
  }
  const auto thetas = analysis::normalize_scores(scored);
  const auto global = analysis::global_index(thetas, staff);

  // Tables.
  auto& tables = result.report.tables;
  {
    Table t{"disambiguation_stats", {"total", "resolved", "manual_review", "discarded", "unresolvable"}, {}};
    t.add({Cell::count(static_cast<long long>(dis.stats.total)), Cell::count(static_cast<long long>(dis.stats.resolved)),
           Cell::count(static_cast<long long>(dis.stats.manual_review)),
           Cell::count(static_cast<long long>(dis.stats.discarded)),
           Cell::count(static_cast<long long>(dis.stats.unresolvable))});
    tables.push_back(std::move(t));
  }
  {
    Table t{"area_status", {"area", "status", "candidates", "dmus", "excluded", "message"}, {}};
    for (const auto& run : runs) {
      t.add({Cell::str(run.outcome.area), Cell::str(run.outcome.analyzed ? "analyzed" : "failed"),
             Cell::count(static_cast<long long>(run.candidates)),
             Cell::count(static_cast<long long>(run.outcome.cells.size())),
             Cell::count(static_cast<long long>(run.excluded.size())), Cell::str(run.outcome.message)});
    }
    tables.push_back(std::move(t));
  }
  {
    std::vector<std::string> cols{"area", "university"};
    for (const auto& l : bibliometrics::kInputLabels) cols.push_back(l);
    for (const auto& l : bibliometrics::kOutputLabels) cols.push_back(l);
    cols.push_back("staff");
    cols.push_back("status");
    Table t{"dmu_data", cols, {}};
    std::vector<const bibliometrics::CellData*> sorted;
    for (const auto& c : cells) sorted.push_back(&c);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
      if (a->id.area != b->id.area) return natural_less(a->id.area, b->id.area);
      return natural_less(a->id.university, b->id.university);
    });
    for (const auto* c : sorted) {
      std::vector<Cell> row{Cell::str(c->id.area), Cell::str(c->id.university)};
      for (const auto& l : bibliometrics::kInputLabels) row.push_back(Cell::num(c->value(l)));
      for (const auto& l : bibliometrics::kOutputLabels) row.push_back(Cell::num(c->value(l)));
      row.push_back(Cell::num(c->inputs.staff()));
      row.push_back(Cell::str(cell_status.count(c->id) ? cell_status.at(c->id) : "unassigned"));
      t.add(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  {
    std::vector<bibliometrics::CellData> kept;
    for (const auto& run : runs) kept.insert(kept.end(), run.outcome.cells.begin(), run.outcome.cells.end());
    std::vector<std::string> labels = config.inputs;
    labels.insert(labels.end(), config.outputs.begin(), config.outputs.end());
    tables.push_back(descriptive_stats(kept, labels));
  }
  {
    std::vector<std::string> cols{"area", "dmus"};
    if (show_crs) cols.push_back("mean_te");
    if (show_vrs) cols.push_back("mean_pte");
    if (show_all) cols.push_back("mean_se");
    if (show_crs) cols.push_back("te_efficient");
    if (show_vrs) cols.push_back("pte_efficient");
    if (show_all) {
      cols.push_back("constant_rts");
      cols.push_back("increasing_rts");
      cols.push_back("decreasing_rts");
    }
    Table t{"efficiency_summary", cols, {}};
    for (const auto& run : runs) {
      if (!run.outcome.analyzed) continue;
      const auto& r = run.outcome.results;
      const auto count_if = [&](auto pred) { return Cell::count(std::count_if(r.begin(), r.end(), pred)); };
      const double eff = 1.0 - config.epsilon;
      std::vector<Cell> row{Cell::str(run.outcome.area), Cell::count(static_cast<long long>(r.size()))};
      if (show_crs) row.push_back(Cell::score(mean_of(r, &dea::EfficiencyResult::te)));
      if (show_vrs) row.push_back(Cell::score(mean_of(r, &dea::EfficiencyResult::pte)));
      if (show_all) row.push_back(Cell::score(mean_of(r, &dea::EfficiencyResult::se)));
      if (show_crs) row.push_back(count_if([&](const auto& e) { return e.te >= eff; }));
      if (show_vrs) row.push_back(count_if([&](const auto& e) { return e.pte >= eff; }));
      if (show_all) {
        for (auto rts : {dea::ReturnsToScale::constant, dea::ReturnsToScale::increasing,
                         dea::ReturnsToScale::decreasing}) {
          row.push_back(count_if([&](const auto& e) { return e.rts == rts; }));
        }
      }
      t.add(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  for (const auto& run : runs) {
    if (!run.outcome.analyzed) continue;
    std::vector<std::string> cols{"university"};
    if (show_crs) {
      cols.push_back("phi_crs");
      cols.push_back("te");
    }
    if (show_vrs) {
      cols.push_back("phi_vrs");
      cols.push_back("pte");
    }
    if (show_all) {
      cols.push_back("phi_nirs");
      cols.push_back("te_nirs");
      cols.push_back("se");
      cols.push_back("rts");
    }
    if (show_vrs) cols.push_back("peers");
    cols.push_back("rank");
    Table t{"efficiency_" + run.outcome.area, cols, {}};
    for (const auto& e : run.outcome.results) {
      std::vector<Cell> row{Cell::str(e.id.university)};
      if (show_crs) {
        row.push_back(Cell::score(e.phi_crs));
        row.push_back(Cell::score(e.te));
      }
      if (show_vrs) {
        row.push_back(Cell::score(e.phi_vrs));
        row.push_back(Cell::score(e.pte));
      }
      if (show_all) {
        row.push_back(Cell::score(e.phi_nirs));
        row.push_back(Cell::score(e.te_nirs));
        row.push_back(Cell::score(e.se));
        row.push_back(Cell::str(std::string(dea::to_string(e.rts))));
      }
      if (show_vrs) row.push_back(Cell::str(peers_text(e.peers)));
      row.push_back(Cell::count(area_rank.at(e.id)));
      t.add(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  {
    Table t{"tertiles",
            {"area", "units", "efficient", "t1_n", "t1_mean", "t2_n", "t2_mean", "t3_n", "t3_mean"},
            {}};
    for (const auto& run : runs) {
      if (!run.outcome.analyzed) continue;
      std::vector<double> v;
      for (const auto& e : run.outcome.results) v.push_back(ranked_score(e));
      const auto s = analysis::tertile_summary(v, config.epsilon);
      std::vector<Cell> row{Cell::str(run.outcome.area), Cell::count(static_cast<long long>(s.units)),
                            Cell::count(static_cast<long long>(s.efficient))};
      for (std::size_t g = 0; g < 3; ++g) {
        row.push_back(Cell::count(static_cast<long long>(s.sizes[g])));
        row.push_back(optional_mean(s.means[g]));
      }
      t.add(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  {
    Table t{"theta", {"area", "university", "score", "theta", "staff"}, {}};
    for (const auto& n : thetas) {
      t.add({Cell::str(n.id.area), Cell::str(n.id.university), Cell::score(n.score), Cell::num(n.theta),
             Cell::num(staff.at(n.id))});
    }
    tables.push_back(std::move(t));
  }
  {
    std::vector<std::string> cols{"university", "theta_tot", "rank_general"};
    std::vector<AreaId> analyzed;
    for (const auto& run : runs) {
      if (run.outcome.analyzed) {
        analyzed.push_back(run.outcome.area);
        cols.push_back("rank_" + run.outcome.area);
      }
    }
    Table t{"ranking", cols, {}};
    std::vector<double> tot;
    for (const auto& g : global.universities) tot.push_back(g.theta_tot);
    const auto general = analysis::rank(tot, analysis::Direction::descending, config.epsilon);
    for (std::size_t i = 0; i < global.universities.size(); ++i) {
      const auto& g = global.universities[i];
      std::vector<Cell> row{Cell::str(g.university), Cell::num(g.theta_tot), Cell::count(general[i])};
      for (const auto& area : analyzed) {
        const auto it = area_rank.find(DmuId{g.university, area});
        row.push_back(it == area_rank.end() ? Cell::none() : Cell::count(it->second));
      }
      t.add(std::move(row));
    }
    for (const auto& n : global.notices) warnings.add({Cell::str("global_index"), Cell::none(), Cell::str(n)});
    tables.push_back(std::move(t));
  }
  if (config.compare_partial) {
    std::vector<std::string> cols{"area", "dmus"};
    cols.insert(cols.end(), kComparisonColumns.begin(), kComparisonColumns.end());
    Table summary{"comparison_partial", cols, {}};
    Table detail{"comparison_partial_detail",
                 {"area", "university", "score", "rank_score", "partial_productivity", "rank_partial", "delta"},
                 {}};
    for (const auto& run : runs) {
      if (!run.outcome.analyzed) continue;
      std::vector<double> pp;
      analysis::Ranking by_score, by_pp;
      for (const auto& e : run.outcome.results) {
        const auto* c = cell_of.at(e.id);
        pp.push_back(analysis::partial_productivity(c->outputs.pu, c->inputs.staff()).value_or(0.0));
      }
      const auto pp_rank = analysis::rank(pp, analysis::Direction::descending, config.epsilon);
      for (std::size_t i = 0; i < pp.size(); ++i) {
        const auto& id = run.outcome.results[i].id;
        by_score[id.university] = area_rank.at(id);
        by_pp[id.university] = pp_rank[i];
      }
      const auto cmp = analysis::compare_rankings(by_score, by_pp);
      std::vector<Cell> row{Cell::str(run.outcome.area), Cell::count(static_cast<long long>(pp.size()))};
      add_comparison_cells(row, cmp);
      summary.add(std::move(row));
      for (std::size_t i = 0; i < pp.size(); ++i) {
        const auto& e = run.outcome.results[i];
        detail.add({Cell::str(run.outcome.area), Cell::str(e.id.university), Cell::score(ranked_score(e)),
                    Cell::count(area_rank.at(e.id)), Cell::num(pp[i]), Cell::count(pp_rank[i]),
                    Cell::count(cmp.delta.at(e.id.university))});
      }
    }
    tables.push_back(std::move(summary));
    tables.push_back(std::move(detail));
  }
  for (const auto& label : config.drop_inputs) {
    std::vector<std::string> cols{"area", "dmus", "efficient_before", "efficient_after", "no_longer_efficient"};
    cols.insert(cols.end(), kComparisonColumns.begin(), kComparisonColumns.end());
    Table summary{"sensitivity_" + label, cols, {}};
    Table detail{"sensitivity_" + label + "_detail",
                 {"area", "university", "pte_before", "pte_after", "rank_before", "rank_after", "delta"},
                 {}};
    analysis::SensitivityOptions so;
    so.epsilon = config.epsilon;
    so.dea = dea_options;
    for (const auto& run : runs) {
      if (!run.outcome.analyzed) continue;
      try {
        const auto s = analysis::sensitivity_drop_input(*run.problem, label, so);
        std::vector<Cell> row{Cell::str(run.outcome.area), Cell::count(static_cast<long long>(s.rows.size())),
                              Cell::count(static_cast<long long>(s.efficient_before)),
                              Cell::count(static_cast<long long>(s.efficient_after)),
                              Cell::count(static_cast<long long>(s.comparison.no_longer_efficient.value_or(0)))};
        add_comparison_cells(row, s.comparison);
        summary.add(std::move(row));
        for (const auto& r : s.rows) {
          detail.add({Cell::str(run.outcome.area), Cell::str(r.id.university), Cell::score(r.pte_before),
                      Cell::score(r.pte_after), Cell::count(r.rank_before), Cell::count(r.rank_after),
                      Cell::count(s.comparison.delta.at(r.id.to_string()))});
        }
      } catch (const Error& e) {
        result.partial = true;
        warnings.add({Cell::str("sensitivity"), Cell::none(),
                      Cell::str("area " + run.outcome.area + " without " + label + ": " + e.what())});
      }
    }
    tables.push_back(std::move(summary));
    tables.push_back(std::move(detail));
  }

  for (const auto& run : runs) {
    for (const auto& e : run.excluded) {
      exclusions.add({Cell::str("dmu"), Cell::str(e.id.area), Cell::str(e.id.university),
                      Cell::str(std::string(bibliometrics::to_string(e.reason))), Cell::str(e.detail)});
    }
    if (!run.outcome.analyzed) {
      exclusions.add({Cell::str("area"), Cell::str(run.outcome.area), Cell::str(run.outcome.area),
                      Cell::str(run.failure_reason), Cell::str(run.outcome.message)});
    }
  }
  {
    std::set<UniversityId> in_index;
    for (const auto& g : global.universities) in_index.insert(g.university);
    std::set<UniversityId> scored_unis;
    for (const auto& s : scored) scored_unis.insert(s.id.university);
    for (const auto& u : scored_unis) {
      if (!in_index.count(u)) {
        exclusions.add({Cell::str("university"), Cell::none(), Cell::str(u), Cell::str("zero_staff"),
                        Cell::str("no staff in its scored areas")});
      }
    }
  }
  tables.push_back(std::move(exclusions));
  {
    Table t{"manual_review", ingest::kReviewColumns, {}};
    for (const auto& r : dis.manual_review) {
      std::string candidates;
      for (const auto& c : r.candidates) candidates += (candidates.empty() ? "" : ";") + c;
      t.add({Cell::str(r.publication), Cell::count(static_cast<long long>(r.position)), Cell::str(r.raw_token),
             Cell::str(candidates), Cell::none()});
    }
    tables.push_back(std::move(t));
  }
  tables.push_back(std::move(warnings));

  for (auto& run : runs) result.areas.push_back(std::move(run.outcome));
  return result;
}

}  // namespace resprod::pipeline
