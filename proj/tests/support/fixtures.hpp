#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "fso/holarchy.hpp"
#include "fso/scenario.hpp"

namespace fso::testing {

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(FSO_SCENARIO_DIR) / name;
}

inline Scenario fixture(const std::string& name) { return load_scenario_file(scenario_path(name)); }

inline HolonSpec atomic(std::uint64_t id, std::initializer_list<std::uint64_t> caps) {
  HolonSpec h;
  h.id = HolonId{id};
  h.kind = HolonKind::atomic;
  for (auto c : caps) h.capabilities.push_back(RoleId{c});
  return h;
}

inline HolonSpec composite(std::uint64_t id, std::initializer_list<std::uint64_t> members,
                           std::optional<std::uint64_t> rep = std::nullopt) {
  HolonSpec h;
  h.id = HolonId{id};
  h.kind = HolonKind::composite;
  for (auto m : members) h.members.push_back(HolonId{m});
  if (rep) h.representative = HolonId{*rep};
  return h;
}

inline std::vector<RoleSpec> roles(std::uint64_t n) {
  std::vector<RoleSpec> out;
  for (std::uint64_t r = 0; r < n; ++r) out.push_back({RoleId{r}, "role-" + std::to_string(r)});
  return out;
}

/// Nine-agent community: root 0 with agents 1..9; agents 1-4 offer role 0,
/// agents 5-9 offer roles 1-5.
inline HolarchySpec nine_agents() {
  HolarchySpec spec;
  spec.roles = roles(6);
  spec.holons.push_back(composite(0, {1, 2, 3, 4, 5, 6, 7, 8, 9}));
  for (std::uint64_t a = 1; a <= 4; ++a) spec.holons.push_back(atomic(a, {0}));
  for (std::uint64_t a = 5; a <= 9; ++a) spec.holons.push_back(atomic(a, {a - 4}));
  return spec;
}

/// Root 0 -> SoCs 1, 2; SoC 1 holds agents 10 (role 0) and 11 (role 1);
/// SoC 2 holds agents 20 (role 2) and 21 (role 0).
inline HolarchySpec two_districts() {
  HolarchySpec spec;
  spec.roles = roles(3);
  spec.holons = {composite(0, {1, 2}), composite(1, {10, 11}), composite(2, {20, 21}),
                 atomic(10, {0}),      atomic(11, {1}),         atomic(20, {2}),
                 atomic(21, {0})};
  return spec;
}

inline ResponseActivity activity(std::string id, std::string topic, std::initializer_list<std::uint64_t> roles,
                                 Tick duration = 5) {
  ResponseActivity a;
  a.id = std::move(id);
  a.trigger_topics = {std::move(topic)};
  for (auto r : roles) a.required_roles.push_back(RoleId{r});
  std::sort(a.required_roles.begin(), a.required_roles.end());
  a.duration = duration;
  return a;
}

}  // namespace fso::testing
