// Command-line front end: `resprod run` analyzes a dataset, `resprod synth`
// writes a synthetic one.

#include <CLI11.hpp>
#include <iostream>

#include "resprod/csv.hpp"
#include "resprod/errors.hpp"
#include "resprod/ingest.hpp"
#include "resprod/pipeline.hpp"
#include "resprod/synthetic.hpp"
#include "resprod/text.hpp"

namespace {

using namespace resprod;

std::vector<int> parse_years(const std::string& spec) {
  std::vector<int> years;
  for (const auto& part : text::split(spec, ',')) {
    const auto p = text::trim(part);
    const auto dash = p.find('-', 1);
    try {
      if (dash == std::string::npos) {
        years.push_back(std::stoi(p));
        continue;
      }
      const int a = std::stoi(p.substr(0, dash));
      const int b = std::stoi(p.substr(dash + 1));
      if (a > b) throw StructuralError("year range " + p + " is reversed");
      for (int y = a; y <= b; ++y) years.push_back(y);
    } catch (const std::logic_error&) {
      throw StructuralError("cannot read years '" + spec + "'");
    }
  }
  return years;
}

std::vector<std::string> parse_labels(const std::string& spec) {
  std::vector<std::string> out;
  for (const auto& part : text::split(spec, ',')) {
    auto t = text::trim(part);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

void print_diagnostics(const InputError& e) {
  for (const auto& d : e.diagnostics()) {
    std::cerr << d.file;
    if (d.line) std::cerr << ':' << d.line;
    std::cerr << ": " << d.message << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Research productivity of university departments with data envelopment analysis"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the full analysis and write the report tables");
  std::string data_dir;
  ingest::InputPaths paths;
  std::string out_dir = "report";
  std::string years = "2001-2003";
  std::string regime = "all";
  std::string format = "csv";
  std::string inputs = "FP,AP,RF,PR";
  std::string outputs = "PU,PC,SS";
  std::string overrides;
  std::vector<std::string> drops;
  pipeline::RunConfig config;
  run->add_option("--data-dir", data_dir, "Directory holding the five input CSV files");
  run->add_option("--staff", paths.staff, "staff.csv (overrides --data-dir)");
  run->add_option("--publications", paths.publications, "publications.csv (overrides --data-dir)");
  run->add_option("--journals", paths.journals, "journals.csv (overrides --data-dir)");
  run->add_option("--funding", paths.funding, "funding.csv (overrides --data-dir)");
  run->add_option("--affiliations", paths.affiliations, "affiliations.csv (overrides --data-dir)");
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--years", years, "Output years, e.g. 2001-2003 or 2001,2003")->capture_default_str();
  run->add_option("--lag", config.lag, "Years between input snapshot and output year")->capture_default_str();
  run->add_option("--min-staff", config.min_staff, "Minimum averaged FP+AP+RF per DMU")->capture_default_str();
  run->add_option("--epsilon", config.epsilon, "Efficiency and tie tolerance")->capture_default_str();
  run->add_option("--regime", regime, "Score columns to emit: crs, vrs or all")
      ->check(CLI::IsMember({"crs", "vrs", "all"}))
      ->capture_default_str();
  run->add_option("--inputs", inputs, "Comma-separated input variables")->capture_default_str();
  run->add_option("--outputs", outputs, "Comma-separated output variables")->capture_default_str();
  run->add_option("--drop-input", drops, "Input to drop in a sensitivity run (repeatable)");
  run->add_flag("--compare-partial", config.compare_partial,
                "Compare efficiency ranks with publications per staff member");
  run->add_option("--format", format, "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  run->add_option("--manual-overrides", overrides, "Filled-in manual_review.csv to apply");

  auto* synth = app.add_subcommand("synth", "Write a synthetic dataset");
  synthetic::Spec spec;
  std::string synth_out;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--areas", spec.areas, "Number of disciplinary areas")->capture_default_str();
  synth->add_option("--universities", spec.universities, "Number of universities")->capture_default_str();
  synth->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  synth->add_option("--first-year", spec.first_year, "First output year")->capture_default_str();
  synth->add_option("--last-year", spec.last_year, "Last output year")->capture_default_str();
  synth->add_option("--lag", spec.lag, "Input lag the data should cover")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*synth) {
      synthetic::write(synthetic::generate(spec), synth_out);
      std::cerr << "wrote synthetic dataset to " << synth_out << '\n';
      return 0;
    }

    const auto dir_paths = ingest::InputPaths::in_directory(data_dir.empty() ? "." : data_dir);
    for (auto [p, d] : {std::pair{&paths.staff, &dir_paths.staff}, {&paths.publications, &dir_paths.publications},
                        {&paths.journals, &dir_paths.journals}, {&paths.funding, &dir_paths.funding},
                        {&paths.affiliations, &dir_paths.affiliations}}) {
      if (p->empty()) *p = *d;
    }
    config.years = parse_years(years);
    config.regime = *pipeline::parse_regime(regime);
    config.format = format == "json" ? report::Format::json : report::Format::csv;
    config.inputs = parse_labels(inputs);
    config.outputs = parse_labels(outputs);
    config.drop_inputs = drops;
    config.validate();

    const auto corpus = ingest::ingest(paths);
    std::vector<disambiguation::ManualOverride> manual;
    if (!overrides.empty()) manual = ingest::read_overrides(csv::read_file(overrides), overrides);

    const auto result = pipeline::run_pipeline(corpus, config, manual);
    report::write(result.report, out_dir, config.format);

    const auto& s = result.disambiguation;
    std::cerr << "publications: " << s.total << " (resolved " << s.resolved << ", manual review " << s.manual_review
              << ", discarded " << s.discarded << ", unresolvable " << s.unresolvable << ")\n";
    for (const auto& a : result.areas) {
      std::cerr << "area " << a.area << ": "
                << (a.analyzed ? std::to_string(a.results.size()) + " DMUs analyzed" : "failed: " + a.message)
                << '\n';
    }
    std::cerr << "report written to " << out_dir << '\n';
    return result.exit_code();
  } catch (const InputError& e) {
    print_diagnostics(e);
    return 1;
  } catch (const MissingDataError& e) {
    std::cerr << "missing data: " << e.what() << '\n';
    return 1;
  } catch (const StructuralError& e) {
    std::cerr << "invalid configuration or data: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
