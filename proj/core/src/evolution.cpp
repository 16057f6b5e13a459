#include "fso/evolution.hpp"

#include <algorithm>

namespace fso {

SonSignature signature_of(const Son& son) {
  SonSignature sig{son.activity, {}};
  for (const auto& [holon, role] : son.members) sig.members.push_back(holon);
  std::sort(sig.members.begin(), sig.members.end());
  sig.members.erase(std::unique(sig.members.begin(), sig.members.end()), sig.members.end());
  return sig;
}

Outcome EvolutionPolicy::outcome_for(const Son& son) const {
  for (const FaultWindow& w : fault_injection)
    if (w.activity == son.activity && son.dissolves_at >= w.from && son.dissolves_at < w.to) return Outcome::failure;
  return Outcome::success;
}

void record_outcome(ExperienceLedger& ledger, const Son& son, Outcome outcome, Tick t, const EvolutionPolicy& policy) {
  const SonSignature sig = signature_of(son);
  SignatureRecord& rec = ledger.son_outcomes[sig];
  rec.last_seen = t;
  if (outcome == Outcome::success) {
    ++rec.successes;
    for (HolonId a : sig.members) ++ledger.holon_perf[a].completed;
    for (std::size_t i = 0; i < sig.members.size(); ++i)
      for (std::size_t j = i + 1; j < sig.members.size(); ++j)
        ledger.strengths[{sig.members[i], sig.members[j]}] += policy.strength_increment;
  } else {
    ++rec.failures;
    for (HolonId a : sig.members) ++ledger.holon_perf[a].failed;
    ledger.failure_ticks[sig.members].push_back(t);
  }
}

double connection_strength(const ExperienceLedger& ledger, HolonId a, HolonId b) {
  auto it = ledger.strengths.find({std::min(a, b), std::max(a, b)});
  return it == ledger.strengths.end() ? 0.0 : it->second;
}

namespace {

std::vector<HolonId> sorted_members(const Holon& soc) {
  std::vector<HolonId> m = soc.members;
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

PermanentifyResult maybe_permanentify(ExperienceLedger& ledger, const Holarchy& h, const EvolutionPolicy& policy,
                                      Tick t) {
  PermanentifyResult result{h, {}};
  for (const auto& [sig, rec] : ledger.son_outcomes) {
    if (rec.successes < policy.permanentify_threshold || ledger.permanentified.contains(sig)) continue;
    // A single actor is not a community.
    if (sig.members.size() < 2) continue;
    const Holarchy& cur = result.holarchy;
    const bool exists = std::any_of(cur.holons().begin(), cur.holons().end(), [&](const auto& kv) {
      return kv.second.is_composite() && sorted_members(kv.second) == sig.members;
    });
    if (exists) continue;

    std::vector<HolonId> homes;
    for (HolonId m : sig.members)
      if (auto p = cur.parent_of(m)) homes.push_back(*p);
    const HolonId parent = cur.lowest_common_ancestor(homes);

    Holon soc;
    soc.id = cur.next_free_id();
    soc.kind = HolonKind::composite;
    soc.members = sig.members;
    soc.representative = sig.members.front();
    soc.name = "permanent:" + sig.activity;
    soc.origin = Origin::permanentified;
    soc.created_at = t;

    const HolonId id = soc.id;
    result.holarchy = cur.with_composite(std::move(soc), parent);
    result.created.push_back({id, parent, sig});
    ledger.permanentified.insert(sig);
  }
  return result;
}

PruneResult maybe_prune(const ExperienceLedger& ledger, const Holarchy& h, const EvolutionPolicy& policy, Tick t) {
  PruneResult result{h, {}};
  for (const auto& [id, soc] : h.holons()) {
    if (!soc.is_composite() || soc.origin != Origin::permanentified) continue;
    const std::vector<HolonId> members = sorted_members(soc);
    auto it = ledger.failure_ticks.find(members);
    if (it == ledger.failure_ticks.end()) continue;
    const auto recent = static_cast<std::uint64_t>(std::count_if(it->second.begin(), it->second.end(), [&](Tick f) {
      return f >= soc.created_at && f > t - policy.prune_window && f <= t;
    }));
    if (recent < policy.prune_failure_threshold) continue;
    result.holarchy = result.holarchy.without_composite(id);
    result.removed.push_back({id, recent, members});
  }
  return result;
}

}  // namespace fso
