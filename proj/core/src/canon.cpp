#include "fso/canon.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace fso {

const char* to_string(CanonErrc code) {
  switch (code) {
    case CanonErrc::unknown_topic:
      return "UnknownTopic";
    case CanonErrc::unknown_soc:
      return "UnknownSoc";
    case CanonErrc::stale_assignment:
      return "StaleAssignment";
    case CanonErrc::premature_dissolve:
      return "PrematureDissolve";
  }
  return "?";
}

ActivityTable::ActivityTable(std::vector<ResponseActivity> activities, std::set<std::string> extra_topics)
    : activities_(std::move(activities)) {
  std::sort(activities_.begin(), activities_.end(),
            [](const ResponseActivity& a, const ResponseActivity& b) { return a.id < b.id; });
  for (auto& act : activities_) {
    std::sort(act.required_roles.begin(), act.required_roles.end());
    topics_.insert(act.trigger_topics.begin(), act.trigger_topics.end());
    topics_.insert(act.required_data.begin(), act.required_data.end());
  }
  topics_.insert(extra_topics.begin(), extra_topics.end());
}

const ResponseActivity* ActivityTable::find(std::string_view id) const {
  auto it = std::lower_bound(activities_.begin(), activities_.end(), id,
                             [](const ResponseActivity& a, std::string_view key) { return a.id < key; });
  return (it != activities_.end() && it->id == id) ? &*it : nullptr;
}

bool ActivityTable::declares(std::string_view topic) const { return topics_.contains(topic); }

TriggerSet publish(Registry& reg, InformationItem item, const ActivityTable& activities) {
  if (!activities.declares(item.topic))
    throw CanonError(CanonErrc::unknown_topic, "undeclared topic '" + item.topic + "'");
  TriggerSet out;
  for (const ResponseActivity& act : activities.activities())
    if (act.trigger_topics.contains(item.topic)) out.push_back(&act);
  reg.append_info(std::move(item));
  return out;
}

std::vector<Candidate> candidate_pool(std::span<const Registry* const> registries, const ActivationState& state) {
  std::map<HolonId, Candidate> merged;
  for (const Registry* reg : registries) {
    for (const ServiceEntry& e : reg->service_entries()) {
      if (!state.is_inactive(e.provider)) continue;
      auto [it, inserted] = merged.try_emplace(e.provider, Candidate{e.provider, e.registered_at, {}});
      it->second.registered_at = std::min(it->second.registered_at, e.registered_at);
      it->second.roles.insert(e.role);
    }
  }
  std::vector<Candidate> pool;
  pool.reserve(merged.size());
  for (auto& [id, c] : merged) pool.push_back(std::move(c));
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.registered_at, a.holon) < std::tie(b.registered_at, b.holon);
  });
  return pool;
}

namespace {

// Bipartite matching between role slots and candidates (Kuhn's augmenting paths).
class SlotMatcher {
 public:
  SlotMatcher(const std::vector<RoleId>& slots, const std::vector<Candidate>& pool)
      : slots_(slots), pool_(pool), blocked_(pool.size(), false) {}

  void block(std::size_t candidate) { blocked_[candidate] = true; }
  void unblock(std::size_t candidate) { blocked_[candidate] = false; }

  /// True when every slot in `active` can be matched to a distinct unblocked candidate.
  bool saturates(const std::vector<std::size_t>& active) {
    owner_.assign(pool_.size(), kNone);
    for (std::size_t slot : active) {
      visited_.assign(pool_.size(), false);
      if (!augment(slot)) return false;
    }
    return true;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool augment(std::size_t slot) {
    for (std::size_t c = 0; c < pool_.size(); ++c) {
      if (blocked_[c] || visited_[c] || !pool_[c].roles.contains(slots_[slot])) continue;
      visited_[c] = true;
      if (owner_[c] == kNone || augment(owner_[c])) {
        owner_[c] = slot;
        return true;
      }
    }
    return false;
  }

  const std::vector<RoleId>& slots_;
  const std::vector<Candidate>& pool_;
  std::vector<bool> blocked_;
  std::vector<bool> visited_;
  std::vector<std::size_t> owner_;
};

}  // namespace

GuardResult evaluate_guard(const ResponseActivity& act, std::span<const Registry* const> registries,
                           const ActivationState& state) {
  std::vector<RoleId> slots = act.required_roles;
  std::sort(slots.begin(), slots.end());

  Missing missing;
  for (const std::string& topic : act.required_data) {
    bool present = std::any_of(registries.begin(), registries.end(),
                               [&](const Registry* r) { return r->has_info(topic); });
    if (!present) missing.data.push_back(topic);
  }

  std::vector<Candidate> pool = candidate_pool(registries, state);
  std::erase_if(pool, [&](const Candidate& c) {
    return std::none_of(slots.begin(), slots.end(), [&](RoleId r) { return c.roles.contains(r); });
  });

  SlotMatcher matcher(slots, pool);
  std::vector<std::size_t> all(slots.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  if (!matcher.saturates(all)) {
    // Greedy over slots yields a maximum matchable subset; the rest is missing.
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      kept.push_back(i);
      if (!matcher.saturates(kept)) {
        kept.pop_back();
        missing.roles.push_back(slots[i]);
      }
    }
    return missing;
  }
  if (!missing.data.empty()) return missing;

  Enabled enabled;
  std::vector<std::size_t> rest = all;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    rest.erase(rest.begin());
    bool placed = false;
    for (std::size_t c = 0; c < pool.size() && !placed; ++c) {
      if (!pool[c].roles.contains(slots[i])) continue;
      if (std::any_of(enabled.assignment.begin(), enabled.assignment.end(),
                      [&](const auto& p) { return p.first == pool[c].holon; }))
        continue;
      matcher.block(c);
      if (matcher.saturates(rest)) {
        enabled.assignment.emplace_back(pool[c].holon, slots[i]);
        placed = true;
      } else {
        matcher.unblock(c);
      }
    }
  }
  return enabled;
}

GuardResult evaluate_guard(const ResponseActivity& act, const Registry& reg, const ActivationState& state) {
  const Registry* one[] = {&reg};
  return evaluate_guard(act, std::span<const Registry* const>(one), state);
}

std::optional<RoleRequest> raise_exception(const RoleRequest& req, const Holarchy& h) {
  const Holon* soc = h.find(req.origin_soc);
  if (soc == nullptr || !soc->is_composite()) {
    std::ostringstream os;
    os << "unknown SoC " << req.origin_soc;
    throw CanonError(CanonErrc::unknown_soc, os.str());
  }
  auto parent = h.parent_of(req.origin_soc);
  if (!parent) return std::nullopt;
  RoleRequest forwarded = req;
  forwarded.origin_soc = *parent;
  forwarded.hop_count = req.hop_count + 1;
  return forwarded;
}

Resolution resolve_request(const ResponseActivity& act, HolonId start_soc, const Holarchy& h,
                           const RegistryBook& registries, const ActivationState& state) {
  auto registry_of = [&](HolonId soc) -> const Registry* {
    auto it = registries.find(soc);
    if (it == registries.end()) {
      std::ostringstream os;
      os << "no registry for SoC " << soc;
      throw CanonError(CanonErrc::unknown_soc, os.str());
    }
    return &it->second;
  };

  RoleRequest req{act.id, {}, start_soc, 0, state.clock()};
  std::vector<HolonId> chain{start_soc};
  std::vector<const Registry*> visible{registry_of(start_soc)};

  for (;;) {
    GuardResult guard = evaluate_guard(act, visible, state);
    if (auto* ok = std::get_if<Enabled>(&guard)) {
      SonPlan plan{act.id, std::move(ok->assignment), {chain.begin(), chain.end()}, req.hop_count, chain};
      for (const auto& [holon, role] : plan.assignment)
        if (auto home = h.parent_of(holon)) plan.spanned_socs.insert(*home);
      return plan;
    }
    auto& gap = std::get<Missing>(guard);
    req.missing_roles = gap.roles;
    std::optional<RoleRequest> next = raise_exception(req, h);
    if (!next) return Unresolved{req.hop_count, chain, std::move(gap)};
    req = std::move(*next);
    chain.push_back(req.origin_soc);
    visible.push_back(registry_of(req.origin_soc));
  }
}

Son form_son(const SonPlan& plan, const ResponseActivity& act, SonId id, RequestId instance, Tick t,
             ActivationState& state) {
  for (const auto& [holon, role] : plan.assignment) {
    if (!state.is_inactive(holon)) {
      std::ostringstream os;
      os << "planned holon " << holon << " is no longer inactive";
      throw CanonError(CanonErrc::stale_assignment, os.str());
    }
  }
  ActivationState before = state;
  try {
    for (const auto& [holon, role] : plan.assignment) state.enroll(holon, role, id);
  } catch (...) {
    state = std::move(before);
    throw;
  }
  return Son{id, instance, plan.activity, plan.assignment, plan.spanned_socs, plan.hop_count, t, t + act.duration};
}

void dissolve_son(const Son& son, Tick t, ActivationState& state) {
  if (t != son.dissolves_at) {
    std::ostringstream os;
    os << "SON " << son.id << " dissolved at " << t << ", due at " << son.dissolves_at;
    throw CanonError(CanonErrc::premature_dissolve, os.str());
  }
  for (const auto& [holon, role] : son.members) state.release(holon);
}

}  // namespace fso
