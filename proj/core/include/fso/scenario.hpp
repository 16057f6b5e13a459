#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fso/canon.hpp"
#include "fso/environment.hpp"
#include "fso/evolution.hpp"
#include "fso/holarchy.hpp"

namespace fso {

/// Everything one simulation run needs. `holarchy.roles` is the scenario's role table.
struct Scenario {
  HolarchySpec holarchy;
  std::vector<ResponseActivity> activities;
  EnvironmentSpec environment;
  EvolutionPolicy policy;
  Tick horizon = 0;
  std::uint64_t seed = 0;
  std::uint64_t retry_bound = 3;

  /// Activities plus every topic mentioned by sources or holons.
  [[nodiscard]] ActivityTable activity_table() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

enum class ScenarioErrc { parse, validation, io };

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(ScenarioErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ScenarioErrc code() const { return code_; }

 private:
  ScenarioErrc code_;
};

/// Parses and validates a JSON scenario. Unknown keys are rejected at every level.
/// Parse errors carry "line L, column C"; validation errors name the failing reference.
[[nodiscard]] Scenario load_scenario(std::string_view text);
[[nodiscard]] Scenario load_scenario_file(const std::filesystem::path& path);

/// Checks cross-references and value ranges; throws ScenarioError(validation).
void validate_scenario(const Scenario& s);

/// Canonical JSON form; load_scenario(serialize_scenario(s)) == s.
[[nodiscard]] std::string serialize_scenario(const Scenario& s);

}  // namespace fso
