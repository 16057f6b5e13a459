#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fso/canon.hpp"
#include "fso/holarchy.hpp"
#include "fso/ids.hpp"

namespace fso {

/// Identity of a recurring SON: the activity plus the sorted member set.
struct SonSignature {
  std::string activity;
  std::vector<HolonId> members;

  friend auto operator<=>(const SonSignature&, const SonSignature&) = default;
};

[[nodiscard]] SonSignature signature_of(const Son& son);

enum class Outcome { success, failure };

/// SONs of `activity` dissolving in [from, to) are recorded as failures.
struct FaultWindow {
  std::string activity;
  Tick from = 0;
  Tick to = 0;

  friend bool operator==(const FaultWindow&, const FaultWindow&) = default;
};

struct EvolutionPolicy {
  std::uint64_t permanentify_threshold = 3;
  std::uint64_t prune_failure_threshold = 3;
  Tick prune_window = 100;
  double strength_increment = 1.0;
  std::vector<FaultWindow> fault_injection;

  [[nodiscard]] Outcome outcome_for(const Son& son) const;

  friend bool operator==(const EvolutionPolicy&, const EvolutionPolicy&) = default;
};

struct SignatureRecord {
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  Tick last_seen = 0;

  friend bool operator==(const SignatureRecord&, const SignatureRecord&) = default;
};

struct HolonRecord {
  std::uint64_t completed = 0;
  std::uint64_t failed = 0;

  friend bool operator==(const HolonRecord&, const HolonRecord&) = default;
};

struct ExperienceLedger {
  std::map<SonSignature, SignatureRecord> son_outcomes;
  std::map<HolonId, HolonRecord> holon_perf;
  /// Keyed by (lower id, higher id).
  std::map<std::pair<HolonId, HolonId>, double> strengths;
  /// Failure ticks per member set, used to judge permanentified SoCs.
  std::map<std::vector<HolonId>, std::vector<Tick>> failure_ticks;
  /// Signatures that already produced a SoC; each permanentifies at most once.
  std::set<SonSignature> permanentified;

  friend bool operator==(const ExperienceLedger&, const ExperienceLedger&) = default;
};

void record_outcome(ExperienceLedger& ledger, const Son& son, Outcome outcome, Tick t, const EvolutionPolicy& policy);

[[nodiscard]] double connection_strength(const ExperienceLedger& ledger, HolonId a, HolonId b);

struct CreatedSoc {
  HolonId id;
  HolonId parent;
  SonSignature signature;
};

struct PermanentifyResult {
  Holarchy holarchy;
  std::vector<CreatedSoc> created;
};

/// Turns every signature with enough successes into a permanent SoC attached
/// at the lowest common ancestor of its members' SoCs.
[[nodiscard]] PermanentifyResult maybe_permanentify(ExperienceLedger& ledger, const Holarchy& h,
                                                    const EvolutionPolicy& policy, Tick t);

struct RemovedSoc {
  HolonId id;
  std::uint64_t failures = 0;
  std::vector<HolonId> members;
};

struct PruneResult {
  Holarchy holarchy;
  std::vector<RemovedSoc> removed;
};

/// Removes permanentified SoCs whose team failed often enough within the window.
/// Institutional SoCs are never candidates.
[[nodiscard]] PruneResult maybe_prune(const ExperienceLedger& ledger, const Holarchy& h,
                                      const EvolutionPolicy& policy, Tick t);

}  // namespace fso
