#pragma once

// Test-only reference implementations. They work on the raw scenario spec and
// plain containers and share no code paths with the library under test.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fso/canon.hpp"
#include "fso/holarchy.hpp"
#include "fso/scenario.hpp"
#include "fso/trace.hpp"

namespace fso::oracle {

/// Parent of every holon, found by scanning the members lists.
std::map<std::uint64_t, std::uint64_t> parent_map(const HolarchySpec& spec);

/// True when the spec describes a legal holarchy (after defaulting representatives).
bool spec_is_valid(const HolarchySpec& spec);

/// Counts activation states by walking every combination explicitly.
std::uint64_t count_activation_states(const HolarchySpec& spec);

/// Siblings in the enclosing SoC plus its representative, by direct scan.
std::set<std::uint64_t> sibling_scan(const HolarchySpec& spec, std::uint64_t holon);

struct OraclePlan {
  std::size_t hop_count = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> assignment;  // (holon, role) over sorted roles
  std::set<std::uint64_t> spanned;
};

/// Exhaustive resolution over a scenario-built holarchy (all registrations at tick 0):
/// for each hop, enumerate every injective capability-consistent assignment of the
/// sorted required roles to inactive holons below the current SoC, keep the
/// lexicographically least by holon id. Empty when the root is reached without success.
std::optional<OraclePlan> resolve(const HolarchySpec& spec, std::uint64_t start_soc,
                                  const std::vector<std::uint64_t>& required_roles,
                                  const std::set<std::string>& required_data,
                                  const std::set<std::uint64_t>& inactive,
                                  const std::map<std::uint64_t, std::set<std::string>>& published);

/// Activation partition reconstructed from a trace: holon -> bound son for active ones.
struct Replay {
  std::set<std::uint64_t> inactive;
  std::map<std::uint64_t, std::uint64_t> active;
  std::vector<std::string> errors;
};
Replay replay(const std::vector<TraceRecord>& trace, const std::vector<std::uint64_t>& atomic_holons);

// Generators

struct HolarchyShape {
  std::size_t max_depth = 4;  // depth of the deepest atomic holon
  std::size_t max_atomic = 12;
  std::size_t max_composites = 6;
  std::size_t roles = 5;
};

HolarchySpec random_holarchy(std::mt19937_64& rng, const HolarchyShape& shape = {});

/// Full random scenario: holarchy, up to 6 activities, a few sources, policy.
Scenario random_scenario(std::uint64_t seed, Tick horizon = 1000);

}  // namespace fso::oracle
