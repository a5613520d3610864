#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resprod/bibliometrics.hpp"
#include "resprod/dea.hpp"
#include "resprod/disambiguation.hpp"
#include "resprod/ingest.hpp"
#include "resprod/report.hpp"

namespace resprod::pipeline {

enum class RegimeSelection { crs, vrs, all };

std::optional<RegimeSelection> parse_regime(std::string_view s);

struct RunConfig {
  std::vector<int> years{2001, 2002, 2003};
  int lag = 1;
  double min_staff = 4.0;
  double epsilon = 1e-6;
  RegimeSelection regime = RegimeSelection::all;
  std::vector<std::string> inputs = bibliometrics::kInputLabels;
  std::vector<std::string> outputs = bibliometrics::kOutputLabels;
  std::vector<std::string> drop_inputs;
  bool compare_partial = false;
  report::Format format = report::Format::csv;

  /// Throws StructuralError naming the first broken rule.
  void validate() const;
};

struct VariableStats {
  std::size_t n = 0;
  double ave = 0.0;
  double min = 0.0;
  double max = 0.0;
  double std_dev = 0.0;  // population
};

/// Throws StructuralError for an empty sample.
VariableStats describe(std::span<const double> values);

/// ave/min/max/std_dev per area (natural order) and per label over `cells`.
report::Table descriptive_stats(const std::vector<bibliometrics::CellData>& cells,
                                const std::vector<std::string>& labels);

struct AreaOutcome {
  AreaId area;
  bool analyzed = false;
  std::string message;
  std::vector<bibliometrics::CellData> cells;  // the DMUs that entered the model
  std::vector<dea::EfficiencyResult> results;
};

struct PipelineResult {
  report::Report report;
  std::vector<AreaOutcome> areas;
  disambiguation::DisambiguationStats disambiguation;
  bool partial = false;  // some area could not be analyzed

  int exit_code() const noexcept { return partial ? 2 : 0; }
};

/// Disambiguation, indicator construction, per-area DEA and the rankings.
/// Area failures are recorded in the report rather than thrown. Throws
/// StructuralError for an invalid config and MissingDataError when a lagged
/// snapshot year is absent.
PipelineResult run_pipeline(const ingest::Corpus& corpus, const RunConfig& config,
                            const std::vector<disambiguation::ManualOverride>& overrides = {});

}  // namespace resprod::pipeline
