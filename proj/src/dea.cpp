#include "resprod/dea.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resprod/errors.hpp"

namespace resprod::dea {

DeaProblem::DeaProblem(std::vector<DmuRecord> dmus, std::vector<std::string> input_labels,
                       std::vector<std::string> output_labels)
    : dmus_(std::move(dmus)),
      input_labels_(std::move(input_labels)),
      output_labels_(std::move(output_labels)) {
  if (dmus_.empty()) throw StructuralError("DEA problem has no DMUs");
  if (input_labels_.empty() || output_labels_.empty()) {
    throw StructuralError("DEA problem needs at least one input and one output");
  }
  for (const auto& d : dmus_) {
    if (d.inputs.size() != input_labels_.size() || d.outputs.size() != output_labels_.size()) {
      throw StructuralError("DMU " + d.id.to_string() + " has inconsistent dimensions");
    }
    auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
    if (std::any_of(d.inputs.begin(), d.inputs.end(), bad) ||
        std::any_of(d.outputs.begin(), d.outputs.end(), bad)) {
      throw StructuralError("DMU " + d.id.to_string() + " has a negative or non-finite value");
    }
  }
}

std::vector<std::size_t> DeaProblem::degenerate_dmus() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dmus_.size(); ++k) {
    const auto& y = dmus_[k].outputs;
    if (std::none_of(y.begin(), y.end(), [](double v) { return v > 0.0; })) out.push_back(k);
  }
  return out;
}

DeaProblem DeaProblem::without_input(std::string_view label) const {
  const auto it = std::find(input_labels_.begin(), input_labels_.end(), label);
  if (it == input_labels_.end()) {
    throw StructuralError("unknown input label '" + std::string(label) + "'");
  }
  if (input_labels_.size() == 1) {
    throw StructuralError("dropping '" + std::string(label) + "' would leave no inputs");
  }
  const auto col = static_cast<std::size_t>(it - input_labels_.begin());
  std::vector<std::string> labels = input_labels_;
  labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(col));
  std::vector<DmuRecord> dmus = dmus_;
  for (auto& d : dmus) d.inputs.erase(d.inputs.begin() + static_cast<std::ptrdiff_t>(col));
  return DeaProblem(std::move(dmus), std::move(labels), output_labels_);
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::crs:
      return "CRS";
    case Regime::vrs:
      return "VRS";
    case Regime::nirs:
      return "NIRS";
  }
  return "?";
}

std::string_view to_string(ReturnsToScale rts) noexcept {
  switch (rts) {
    case ReturnsToScale::constant:
      return "constant";
    case ReturnsToScale::increasing:
      return "increasing";
    case ReturnsToScale::decreasing:
      return "decreasing";
  }
  return "?";
}

namespace {

std::vector<double> column_scales(const DeaProblem& problem, bool inputs) {
  const std::size_t dims = inputs ? problem.input_labels().size() : problem.output_labels().size();
  std::vector<double> scale(dims, 0.0);
  for (const auto& d : problem.dmus()) {
    const auto& v = inputs ? d.inputs : d.outputs;
    for (std::size_t i = 0; i < dims; ++i) scale[i] = std::max(scale[i], v[i]);
  }
  for (double& s : scale) {
    if (s == 0.0) s = 1.0;
  }
  return scale;
}

}  // namespace

RadialSolution solve_output_oriented(const DeaProblem& problem, std::size_t dmu_index,
                                     Regime regime, const Options& options) {
  const auto& dmus = problem.dmus();
  if (dmu_index >= dmus.size()) throw StructuralError("DMU index out of range");
  const std::size_t n = dmus.size();
  const auto& target = dmus[dmu_index];
  const auto in_scale = column_scales(problem, true);
  const auto out_scale = column_scales(problem, false);

  // Variables: phi, lambda_0 .. lambda_{n-1}.
  lp::LinearProgram prog;
  prog.sense = lp::Sense::maximize;
  prog.objective.assign(n + 1, 0.0);
  prog.objective[0] = 1.0;

  for (std::size_t i = 0; i < in_scale.size(); ++i) {
    lp::Constraint row{std::vector<double>(n + 1, 0.0), lp::Relation::less_equal,
                       target.inputs[i] / in_scale[i]};
    for (std::size_t j = 0; j < n; ++j) row.coefficients[j + 1] = dmus[j].inputs[i] / in_scale[i];
    prog.constraints.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < out_scale.size(); ++r) {
    lp::Constraint row{std::vector<double>(n + 1, 0.0), lp::Relation::less_equal, 0.0};
    row.coefficients[0] = target.outputs[r] / out_scale[r];
    for (std::size_t j = 0; j < n; ++j) row.coefficients[j + 1] = -dmus[j].outputs[r] / out_scale[r];
    prog.constraints.push_back(std::move(row));
  }
  if (regime != Regime::crs) {
    lp::Constraint row{std::vector<double>(n + 1, 1.0),
                       regime == Regime::vrs ? lp::Relation::equal : lp::Relation::less_equal, 1.0};
    row.coefficients[0] = 0.0;
    prog.constraints.push_back(std::move(row));
  }

  const lp::Solution sol = lp::solve(prog, options.simplex);
  const std::string who = target.id.to_string();
  switch (sol.status) {
    case lp::Status::unbounded:
      throw DegenerateDmuError(who, "DMU " + who + ": output expansion is unbounded under " +
                                        std::string(to_string(regime)) +
                                        " (all-zero outputs or a zero-input reference)");
    case lp::Status::infeasible:
      throw InvariantViolation("DMU " + who + ": envelopment program infeasible under " +
                               std::string(to_string(regime)));
    case lp::Status::optimal:
      break;
  }

  RadialSolution out;
  out.phi = sol.values[0];
  if (out.phi < 1.0) {
    if (out.phi < 1.0 - options.classification_tolerance) {
      std::ostringstream os;
      os << "DMU " << who << ": phi = " << out.phi << " < 1";
      throw InvariantViolation(os.str());
    }
    out.phi = 1.0;
  }
  out.intensities.assign(sol.values.begin() + 1, sol.values.end());
  return out;
}

double efficiency_score(double phi) {
  if (!(phi >= 1.0)) {
    std::ostringstream os;
    os << "radial expansion factor " << phi << " is below 1";
    throw InvariantViolation(os.str());
  }
  return 1.0 / phi;
}

ReturnsToScale classify_rts(double te_crs, double te_nirs, double te_vrs, double tolerance) {
  auto in_range = [](double s) { return s > 0.0 && s <= 1.0; };
  if (!in_range(te_crs) || !in_range(te_nirs) || !in_range(te_vrs)) {
    throw InvariantViolation("returns-to-scale scores must lie in (0, 1]");
  }
  if (te_crs > te_nirs + tolerance || te_nirs > te_vrs + tolerance) {
    std::ostringstream os;
    os << "score ordering violated: crs " << te_crs << ", nirs " << te_nirs << ", vrs " << te_vrs;
    throw InvariantViolation(os.str());
  }
  if (std::abs(te_crs - te_vrs) <= tolerance) return ReturnsToScale::constant;
  // NIRS coincides with exactly one of the two; pick the nearer when noise blurs it.
  return std::abs(te_nirs - te_crs) <= std::abs(te_vrs - te_nirs) ? ReturnsToScale::increasing
                                                                  : ReturnsToScale::decreasing;
}

namespace {

// phi_crs >= phi_nirs >= phi_vrs holds exactly; snap solver noise, reject real breaks.
double snap_not_above(double value, double bound, double tol, const std::string& what) {
  if (value <= bound) return value;
  if (value - bound <= tol * bound) return bound;
  std::ostringstream os;
  os << what << ": phi ordering violated (" << value << " > " << bound << ")";
  throw InvariantViolation(os.str());
}

}  // namespace

std::vector<EfficiencyResult> decompose(const DeaProblem& problem, const Options& options) {
  std::vector<EfficiencyResult> results;
  results.reserve(problem.size());
  for (std::size_t k = 0; k < problem.size(); ++k) {
    const auto& dmu = problem.dmus()[k];
    const std::string who = dmu.id.to_string();
    EfficiencyResult r;
    r.id = dmu.id;
    try {
      const auto crs = solve_output_oriented(problem, k, Regime::crs, options);
      const auto nirs = solve_output_oriented(problem, k, Regime::nirs, options);
      const auto vrs = solve_output_oriented(problem, k, Regime::vrs, options);
      r.phi_crs = crs.phi;
      r.phi_nirs = snap_not_above(nirs.phi, r.phi_crs, options.classification_tolerance, who);
      r.phi_vrs = snap_not_above(vrs.phi, r.phi_nirs, options.classification_tolerance, who);
      r.te = efficiency_score(r.phi_crs);
      r.te_nirs = efficiency_score(r.phi_nirs);
      r.pte = efficiency_score(r.phi_vrs);
      r.se = r.te / r.pte;
      r.rts = classify_rts(r.te, r.te_nirs, r.pte, options.classification_tolerance);
      for (std::size_t j = 0; j < vrs.intensities.size(); ++j) {
        if (vrs.intensities[j] > options.intensity_tolerance) {
          r.peers.push_back({problem.dmus()[j].id, vrs.intensities[j]});
        }
      }
    } catch (const DegenerateDmuError&) {
      throw;
    } catch (const InvariantViolation& e) {
      const std::string msg = e.what();
      throw InvariantViolation(msg.find(who) == std::string::npos ? who + ": " + msg : msg);
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace resprod::dea
