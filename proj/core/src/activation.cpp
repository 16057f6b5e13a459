#include "fso/activation.hpp"

#include <sstream>

namespace fso {

namespace {

std::string message(const char* what, HolonId a) {
  std::ostringstream os;
  os << what << " (holon " << a << ")";
  return os.str();
}

}  // namespace

const char* to_string(ActivationErrc code) {
  switch (code) {
    case ActivationErrc::already_active:
      return "AlreadyActive";
    case ActivationErrc::incapable_role:
      return "IncapableRole";
    case ActivationErrc::not_active:
      return "NotActive";
    case ActivationErrc::unknown_holon:
      return "UnknownHolon";
    case ActivationErrc::too_large:
      return "TooLarge";
  }
  return "?";
}

ActivationState::ActivationState(const Holarchy& h) {
  auto caps = std::make_shared<CapabilityMap>();
  for (HolonId a : h.atomic_holons()) {
    caps->emplace(a, h.at(a).capabilities);
    inactive_.insert(a);
  }
  capabilities_ = std::move(caps);
}

void ActivationState::enroll(HolonId a, RoleId r, SonId son) {
  if (active_.contains(a)) throw ActivationError(ActivationErrc::already_active, message("already active", a));
  if (!inactive_.contains(a)) throw ActivationError(ActivationErrc::unknown_holon, message("not an atomic holon", a));
  if (!capabilities_->at(a).contains(r)) {
    std::ostringstream os;
    os << "role " << r << " outside capabilities (holon " << a << ")";
    throw ActivationError(ActivationErrc::incapable_role, os.str());
  }
  inactive_.erase(a);
  active_.emplace(a, Binding{r, son});
}

void ActivationState::release(HolonId a) {
  auto it = active_.find(a);
  if (it == active_.end()) throw ActivationError(ActivationErrc::not_active, message("not active", a));
  active_.erase(it);
  inactive_.insert(a);
}

std::pair<std::set<HolonId>, std::set<HolonId>> ActivationState::partition() const {
  std::set<HolonId> r;
  for (const auto& [a, binding] : active_) r.insert(a);
  return {inactive_, std::move(r)};
}

std::vector<std::string> ActivationState::check_invariants() const {
  std::vector<std::string> out;
  const std::size_t total = capabilities_ ? capabilities_->size() : 0;
  for (const auto& [a, binding] : active_) {
    if (inactive_.contains(a)) out.push_back(message("holon both inactive and active", a));
    auto caps = capabilities_ ? capabilities_->find(a) : CapabilityMap::const_iterator{};
    if (!capabilities_ || caps == capabilities_->end()) {
      out.push_back(message("active holon is not atomic", a));
    } else if (!caps->second.contains(binding.role)) {
      out.push_back(message("active in a role outside its capabilities", a));
    }
  }
  for (HolonId a : inactive_)
    if (!capabilities_ || !capabilities_->contains(a)) out.push_back(message("inactive holon is not atomic", a));
  if (inactive_.size() + active_.size() != total) {
    std::ostringstream os;
    os << "|L| + |R| = " << inactive_.size() + active_.size() << ", expected " << total;
    out.push_back(os.str());
  }
  return out;
}

std::uint64_t enumerate_activation_space(const Holarchy& h) {
  const std::vector<HolonId> agents = h.atomic_holons();
  if (agents.size() > kMaxEnumerableAgents) {
    std::ostringstream os;
    os << agents.size() << " atomic holons exceed the enumeration limit of " << kMaxEnumerableAgents;
    throw ActivationError(ActivationErrc::too_large, os.str());
  }
  std::uint64_t count = 1;
  for (HolonId a : agents) {
    if (__builtin_mul_overflow(count, 1 + h.at(a).capabilities.size(), &count))
      throw ActivationError(ActivationErrc::too_large, "activation space exceeds 64-bit count");
  }
  return count;
}

}  // namespace fso
