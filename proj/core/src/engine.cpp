#include "fso/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string_view>

namespace fso {

RunOptions RunOptions::from_environment() {
  RunOptions o;
  const char* v = std::getenv("FSO_SIM_DEBUG");
  o.check_invariants = v != nullptr && std::string_view(v) == "1";
  return o;
}

Simulation::Simulation(const Scenario& scenario, RunOptions options)
    : scenario_(scenario),
      options_(options),
      activities_(scenario.activity_table()),
      holarchy_(build_holarchy(scenario.holarchy)),
      registries_(make_registries(holarchy_)),
      state_(holarchy_) {
  const Rng base(scenario_.seed);
  for (std::size_t i = 0; i < scenario_.environment.sources.size(); ++i) {
    SourceCursor cursor{base.fork(i), 0};
    cursor.next = next_event_time(scenario_.environment.sources[i], -1, cursor.rng);
    sources_.push_back(std::move(cursor));
  }
  clock_ = 0;
}

std::vector<TraceRecord> Simulation::step() {
  std::vector<TraceRecord> out;
  if (finished()) return out;
  const Tick now = clock_;
  state_.set_clock(now);

  // (1) dissolutions due now, in SON id order
  bool released = false;
  if (auto due = dissolutions_.find(now); due != dissolutions_.end()) {
    std::vector<SonId> ids = std::move(due->second);
    dissolutions_.erase(due);
    std::sort(ids.begin(), ids.end());
    for (SonId id : ids) {
      const Son son = sons_.at(id);
      dissolve_son(son, now, state_);
      const Outcome outcome = scenario_.policy.outcome_for(son);
      record_outcome(ledger_, son, outcome, now, scenario_.policy);
      out.push_back({now, SonDissolved{son.id, son.activity_instance, son.activity, son.members, son.formed_at, outcome}});
      sons_.erase(id);
      released = true;
    }
  }

  // (2) arrivals, published in source order
  struct Trigger {
    std::uint64_t event;
    HolonId soc;
    const ResponseActivity* activity;
  };
  std::vector<Trigger> triggers;
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    SourceCursor& cursor = sources_[i];
    if (cursor.next != now) continue;
    const SourceSpec& src = scenario_.environment.sources[i];
    const std::uint64_t event = next_event_++;
    const HolonId publisher = holarchy_.at(src.soc).representative.value_or(src.soc);
    InformationItem item{src.topic, "event:" + std::to_string(event), publisher, now};
    TriggerSet fired = publish(registries_.at(src.soc), std::move(item), activities_);
    out.push_back({now, EventPublished{event, i, src.soc, src.topic, publisher}});
    for (const ResponseActivity* act : fired) triggers.push_back({event, src.soc, act});
    cursor.next = next_event_time(src, now, cursor.rng);
  }

  // (3) triggering, resolution, formation
  for (const Trigger& t : triggers) {
    Pending req{RequestId{next_request_++}, t.activity, t.soc, now, 0, now};
    out.push_back({now, ActivityTriggered{req.id, t.activity->id, t.soc, t.event}});
    if (!attempt(req, now, out)) pending_.push_back(req);
  }

  // (4) retries, once per release event
  if (released) {
    std::deque<Pending> still;
    for (Pending& req : pending_) {
      if (req.last_attempt >= now || !attempt(req, now, out)) still.push_back(req);
    }
    pending_ = std::move(still);
  }

  // (5) evolution
  if (released) {
    bool changed = false;
    PermanentifyResult perm = maybe_permanentify(ledger_, holarchy_, scenario_.policy, now);
    for (const CreatedSoc& c : perm.created) {
      out.push_back({now, Permanentified{c.id, c.parent, c.signature.activity, c.signature.members}});
      changed = true;
    }
    PruneResult pruned = maybe_prune(ledger_, perm.holarchy, scenario_.policy, now);
    for (const RemovedSoc& r : pruned.removed) {
      out.push_back({now, Pruned{r.id, r.failures, r.members}});
      changed = true;
    }
    if (changed) {
      holarchy_ = std::move(pruned.holarchy);
      refresh_registries(registries_, holarchy_);
    }
  }

  if (options_.check_invariants) {
    std::vector<std::string> problems = invariant_violations();
    if (!problems.empty()) {
      std::ostringstream os;
      os << "invariant violation at tick " << now << ":";
      for (const auto& p : problems) os << "\n  " << p;
      throw InvariantViolation(os.str());
    }
  }

  clock_ = next_scheduled_tick(now);
  return out;
}

bool Simulation::attempt(Pending& req, Tick now, std::vector<TraceRecord>& out) {
  ++req.attempts;
  req.last_attempt = now;
  const ResponseActivity& act = *req.activity;
  Resolution res = resolve_request(act, req.soc, holarchy_, registries_, state_);

  const std::vector<HolonId>& chain =
      std::visit([](const auto& r) -> const std::vector<HolonId>& { return r.chain; }, res);
  for (std::size_t k = 1; k < chain.size(); ++k)
    out.push_back({now, ExceptionRaised{req.id, req.attempts, chain[k - 1], chain[k], k}});

  if (auto* plan = std::get_if<SonPlan>(&res)) {
    Son son = form_son(*plan, act, SonId{next_son_++}, req.id, now, state_);
    out.push_back({now, SonFormed{son.id, req.id, son.activity, son.members,
                                  std::vector<HolonId>(son.spanned_socs.begin(), son.spanned_socs.end()), son.hop_count,
                                  req.attempts, req.triggered_at, son.dissolves_at}});
    dissolutions_[son.dissolves_at].push_back(son.id);
    sons_.emplace(son.id, std::move(son));
    return true;
  }

  const auto& unresolved = std::get<Unresolved>(res);
  const bool final = req.attempts > scenario_.retry_bound;
  out.push_back({now, RequestUnresolved{req.id, act.id, req.attempts, unresolved.hop_count, unresolved.missing.roles,
                                        unresolved.missing.data, final}});
  return final;
}

Tick Simulation::next_scheduled_tick(Tick now) const {
  Tick next = scenario_.horizon;
  for (const SourceCursor& c : sources_)
    if (c.next > now) next = std::min(next, c.next);
  if (auto it = dissolutions_.upper_bound(now); it != dissolutions_.end()) next = std::min(next, it->first);
  return std::max(next, now + 1);
}

std::vector<std::string> Simulation::invariant_violations() const {
  std::vector<std::string> out = state_.check_invariants();
  for (const Violation& v : validate(holarchy_)) out.push_back(std::string("holarchy: ") + v.detail);

  std::size_t bound = 0;
  for (const auto& [id, son] : sons_) {
    for (const auto& [holon, role] : son.members) {
      auto it = state_.active().find(holon);
      if (it == state_.active().end() || it->second.son != id || it->second.role != role) {
        std::ostringstream os;
        os << "SON " << id << " member " << holon << " not bound to it";
        out.push_back(os.str());
      }
      ++bound;
    }
  }
  if (bound != state_.active().size()) {
    std::ostringstream os;
    os << state_.active().size() << " active holons but " << bound << " SON seats";
    out.push_back(os.str());
  }
  return out;
}

RunResult run(const Scenario& scenario, RunOptions options) {
  Simulation sim(scenario, options);
  RunResult result;
  if (scenario.horizon > 0) {
    result.trace.push_back(
        {0, RunStarted{sim.activation().population(), scenario.seed, scenario.horizon}});
  }
  while (!sim.finished()) {
    std::vector<TraceRecord> records = sim.step();
    result.trace.insert(result.trace.end(), std::make_move_iterator(records.begin()),
                        std::make_move_iterator(records.end()));
  }
  result.metrics = report(result.trace);
  result.holarchy = sim.holarchy();
  result.ledger = sim.ledger();
  return result;
}

}  // namespace fso
