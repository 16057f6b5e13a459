// fso-sim: run, validate and inspect holarchy scenarios.
//
// Exit codes: 0 success, 1 validation failure, 2 runtime invariant violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fso/activation.hpp"
#include "fso/engine.hpp"
#include "fso/holarchy.hpp"
#include "fso/metrics.hpp"
#include "fso/scenario.hpp"
#include "fso/trace.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kInvariantViolation = 2;

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int cmd_run(const std::string& scenario_path, std::uint64_t seed, std::optional<fso::Tick> horizon,
            const std::string& trace_path, const std::string& metrics_path) {
  fso::Scenario scenario;
  try {
    scenario = fso::load_scenario_file(scenario_path);
    scenario.seed = seed;
    if (horizon) {
      scenario.horizon = *horizon;
      fso::validate_scenario(scenario);
    }
  } catch (const fso::ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kValidationFailure;
  }

  fso::RunResult result;
  try {
    result = fso::run(scenario, fso::RunOptions::from_environment());
  } catch (const std::exception& e) {
    std::cerr << "runtime invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  }

  if (!trace_path.empty() && !write_file(trace_path, fso::write_trace(result.trace))) {
    std::cerr << "cannot write " << trace_path << "\n";
    return kValidationFailure;
  }
  const std::string metrics = fso::metrics_to_json(result.metrics);
  if (metrics_path.empty()) {
    std::cout << metrics;
  } else if (!write_file(metrics_path, metrics)) {
    std::cerr << "cannot write " << metrics_path << "\n";
    return kValidationFailure;
  }
  return kOk;
}

int cmd_validate(const std::string& scenario_path) {
  try {
    (void)fso::load_scenario_file(scenario_path);
  } catch (const fso::ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kValidationFailure;
  }
  std::cout << "ok\n";
  return kOk;
}

int cmd_enumerate(const std::string& scenario_path) {
  try {
    const fso::Scenario scenario = fso::load_scenario_file(scenario_path);
    std::cout << fso::enumerate_activation_space(fso::build_holarchy(scenario.holarchy)) << "\n";
  } catch (const fso::ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const fso::ActivationError& e) {
    std::cerr << e.what() << "\n";
    return kValidationFailure;
  }
  return kOk;
}

int cmd_report(const std::string& trace_path) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << trace_path << "\n";
    return kValidationFailure;
  }
  try {
    const std::vector<fso::TraceRecord> trace = fso::read_trace(in);
    std::cout << fso::metrics_to_json(fso::report(trace));
  } catch (const fso::MalformedTrace& e) {
    std::cerr << "malformed trace: " << e.what() << "\n";
    return kValidationFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holarchy simulator: service-oriented communities, exceptions and social overlay networks"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string trace_path;
  std::string metrics_path;
  std::uint64_t seed = 0;
  std::optional<fso::Tick> horizon;

  auto* run = app.add_subcommand("run", "Simulate a scenario to its horizon");
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Random seed (overrides the scenario's)")->required();
  run->add_option("--horizon", horizon, "Horizon in ticks (overrides the scenario's)");
  run->add_option("--trace", trace_path, "Write the line-delimited JSON trace here");
  run->add_option("--metrics", metrics_path, "Write metrics JSON here instead of stdout");

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);

  auto* enumerate = app.add_subcommand("enumerate", "Count the activation states of a scenario's holarchy");
  enumerate->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);

  auto* report = app.add_subcommand("report", "Recompute metrics from a trace file");
  report->add_option("--trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationFailure;
  }

  if (run->parsed()) return cmd_run(scenario_path, seed, horizon, trace_path, metrics_path);
  if (validate->parsed()) return cmd_validate(scenario_path);
  if (enumerate->parsed()) return cmd_enumerate(scenario_path);
  return cmd_report(trace_path);
}
