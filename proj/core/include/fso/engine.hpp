#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fso/activation.hpp"
#include "fso/canon.hpp"
#include "fso/environment.hpp"
#include "fso/evolution.hpp"
#include "fso/holarchy.hpp"
#include "fso/metrics.hpp"
#include "fso/registry.hpp"
#include "fso/scenario.hpp"
#include "fso/trace.hpp"

namespace fso {

struct RunOptions {
  /// Check partition, capability and structure invariants after every step.
  bool check_invariants = false;

  /// check_invariants is on when FSO_SIM_DEBUG=1.
  [[nodiscard]] static RunOptions from_environment();
};

/// Raised when a step leaves the model in an inconsistent state.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic discrete-event loop over logical ticks.
///
/// Each step handles one tick in a fixed order: SON dissolutions, environment
/// arrivals, activity triggering and resolution, retries of unresolved
/// requests (only on ticks that released holons), evolution checks. The clock
/// then jumps to the next tick with scheduled work, or to the horizon.
class Simulation {
 public:
  explicit Simulation(const Scenario& scenario, RunOptions options = {});
  // Pending requests point into the owned activity table.
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  [[nodiscard]] Tick clock() const { return clock_; }
  [[nodiscard]] bool finished() const { return clock_ >= scenario_.horizon; }

  std::vector<TraceRecord> step();

  [[nodiscard]] const Holarchy& holarchy() const { return holarchy_; }
  [[nodiscard]] const RegistryBook& registries() const { return registries_; }
  [[nodiscard]] const ActivationState& activation() const { return state_; }
  [[nodiscard]] const ExperienceLedger& ledger() const { return ledger_; }
  [[nodiscard]] const std::map<SonId, Son>& active_sons() const { return sons_; }
  [[nodiscard]] std::size_t pending_requests() const { return pending_.size(); }

  [[nodiscard]] std::vector<std::string> invariant_violations() const;

 private:
  struct SourceCursor {
    Rng rng;
    Tick next;
  };

  struct Pending {
    RequestId id;
    const ResponseActivity* activity;
    HolonId soc;
    Tick triggered_at;
    std::uint64_t attempts;
    Tick last_attempt;
  };

  /// Resolves and, when possible, forms a SON. Returns true when the request is closed.
  bool attempt(Pending& req, Tick now, std::vector<TraceRecord>& out);
  Tick next_scheduled_tick(Tick now) const;

  Scenario scenario_;
  RunOptions options_;
  ActivityTable activities_;
  Holarchy holarchy_;
  RegistryBook registries_;
  ActivationState state_;
  ExperienceLedger ledger_;
  std::vector<SourceCursor> sources_;
  std::map<SonId, Son> sons_;
  std::map<Tick, std::vector<SonId>> dissolutions_;
  std::deque<Pending> pending_;
  std::uint64_t next_event_ = 0;
  std::uint64_t next_request_ = 0;
  std::uint64_t next_son_ = 0;
  Tick clock_ = 0;
};

struct RunResult {
  std::vector<TraceRecord> trace;
  Metrics metrics;
  Holarchy holarchy;
  ExperienceLedger ledger;
};

/// Steps a fresh simulation to the horizon. The trace opens with a RunStarted
/// record unless the horizon is 0; metrics come from report(trace).
[[nodiscard]] RunResult run(const Scenario& scenario, RunOptions options = {});

}  // namespace fso
