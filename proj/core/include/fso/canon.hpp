#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fso/activation.hpp"
#include "fso/holarchy.hpp"
#include "fso/ids.hpp"
#include "fso/registry.hpp"

namespace fso {

/// A guarded action: enabled once its trigger fires, its data topics are
/// available and every required role can be filled by an inactive provider.
struct ResponseActivity {
  std::string id;
  std::set<std::string> trigger_topics;
  std::vector<RoleId> required_roles;  // multiset, kept sorted
  std::set<std::string> required_data;
  Tick duration = 1;

  friend bool operator==(const ResponseActivity&, const ResponseActivity&) = default;
};

class ActivityTable {
 public:
  ActivityTable() = default;
  /// `extra_topics` declares topics no activity listens to (e.g. published by the environment only).
  explicit ActivityTable(std::vector<ResponseActivity> activities, std::set<std::string> extra_topics = {});

  [[nodiscard]] const std::vector<ResponseActivity>& activities() const { return activities_; }
  [[nodiscard]] const ResponseActivity* find(std::string_view id) const;
  [[nodiscard]] bool declares(std::string_view topic) const;
  [[nodiscard]] const std::set<std::string, std::less<>>& topics() const { return topics_; }

 private:
  std::vector<ResponseActivity> activities_;  // ascending id
  std::set<std::string, std::less<>> topics_;
};

enum class CanonErrc { unknown_topic, unknown_soc, stale_assignment, premature_dissolve };

[[nodiscard]] const char* to_string(CanonErrc code);

class CanonError : public std::runtime_error {
 public:
  CanonError(CanonErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] CanonErrc code() const { return code_; }

 private:
  CanonErrc code_;
};

/// Activities triggered by one item, in ascending activity id.
using TriggerSet = std::vector<const ResponseActivity*>;

/// Appends `item` to the registry and returns the activities listening to its topic.
TriggerSet publish(Registry& reg, InformationItem item, const ActivityTable& activities);

/// Holon and role pairs, aligned with the activity's sorted required_roles.
using Assignment = std::vector<std::pair<HolonId, RoleId>>;

struct Enabled {
  Assignment assignment;
  friend bool operator==(const Enabled&, const Enabled&) = default;
};

/// Unfilled roles, plus required data topics found in none of the visible registries.
struct Missing {
  std::vector<RoleId> roles;
  std::vector<std::string> data;
  friend bool operator==(const Missing&, const Missing&) = default;
};

using GuardResult = std::variant<Enabled, Missing>;

/// Inactive providers visible through `registries`, in tie-break order
/// (earliest registration, then holon id), with the roles each one offers.
struct Candidate {
  HolonId holon;
  Tick registered_at = 0;
  std::set<RoleId> roles;
};
[[nodiscard]] std::vector<Candidate> candidate_pool(std::span<const Registry* const> registries,
                                                    const ActivationState& state);

/// Picks the lexicographically least assignment (by candidate rank, over the
/// sorted required roles) among all capability-consistent assignments of
/// distinct inactive providers.
[[nodiscard]] GuardResult evaluate_guard(const ResponseActivity& act, std::span<const Registry* const> registries,
                                         const ActivationState& state);
[[nodiscard]] GuardResult evaluate_guard(const ResponseActivity& act, const Registry& reg,
                                         const ActivationState& state);

struct RoleRequest {
  std::string activity;
  std::vector<RoleId> missing_roles;
  HolonId origin_soc;
  std::size_t hop_count = 0;
  Tick issued_at = 0;

  friend bool operator==(const RoleRequest&, const RoleRequest&) = default;
};

/// Forwards the request to the higher-up SoC. Empty when origin_soc is the root.
[[nodiscard]] std::optional<RoleRequest> raise_exception(const RoleRequest& req, const Holarchy& h);

struct SonPlan {
  std::string activity;
  Assignment assignment;
  std::set<HolonId> spanned_socs;
  std::size_t hop_count = 0;
  /// Visited SoCs, triggering SoC first.
  std::vector<HolonId> chain;

  friend bool operator==(const SonPlan&, const SonPlan&) = default;
};

struct Unresolved {
  std::size_t hop_count = 0;
  std::vector<HolonId> chain;
  Missing missing;

  friend bool operator==(const Unresolved&, const Unresolved&) = default;
};

using Resolution = std::variant<SonPlan, Unresolved>;

/// Evaluates the guard at `start_soc`, escalating while anything is missing.
/// At each hop the pool is the union of all registries visited so far.
[[nodiscard]] Resolution resolve_request(const ResponseActivity& act, HolonId start_soc, const Holarchy& h,
                                         const RegistryBook& registries, const ActivationState& state);

/// A temporary overlay community bound to one activity instance.
struct Son {
  SonId id;
  RequestId activity_instance;
  std::string activity;
  Assignment members;
  std::set<HolonId> spanned_socs;
  std::size_t hop_count = 0;
  Tick formed_at = 0;
  Tick dissolves_at = 0;

  friend bool operator==(const Son&, const Son&) = default;
};

/// Enrolls every planned holon. Throws CanonError(stale_assignment) without
/// touching `state` when a planned holon is no longer inactive.
Son form_son(const SonPlan& plan, const ResponseActivity& act, SonId id, RequestId instance, Tick t,
             ActivationState& state);

/// Releases every member. Throws CanonError(premature_dissolve) unless t == son.dissolves_at.
void dissolve_son(const Son& son, Tick t, ActivationState& state);

}  // namespace fso
