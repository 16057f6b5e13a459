#include "fso/registry.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace fso {

namespace {

bool canonical_less(const ServiceEntry& a, const ServiceEntry& b) {
  return std::tie(a.registered_at, a.provider, a.role) < std::tie(b.registered_at, b.provider, b.role);
}

}  // namespace

void Registry::register_service(ServiceEntry entry) {
  auto same = std::find_if(services_.begin(), services_.end(), [&](const ServiceEntry& e) {
    return e.provider == entry.provider && e.role == entry.role;
  });
  if (same != services_.end()) {
    if (std::tie(entry.registered_at, entry.via) >= std::tie(same->registered_at, same->via)) return;
    services_.erase(same);
  }
  auto pos = std::upper_bound(services_.begin(), services_.end(), entry, canonical_less);
  services_.insert(pos, std::move(entry));
}

void Registry::replace_services(std::vector<ServiceEntry> entries) {
  services_.clear();
  for (auto& e : entries) register_service(std::move(e));
}

void Registry::append_info(InformationItem item) {
  if (!info_.empty() && item.published_at < info_.back().published_at)
    throw std::invalid_argument("information item published out of order");
  info_.push_back(std::move(item));
}

bool Registry::has_info(std::string_view topic) const {
  return std::any_of(info_.begin(), info_.end(), [&](const InformationItem& i) { return i.topic == topic; });
}

std::vector<ServiceEntry> service_entries_for(const Holarchy& h, HolonId soc) {
  const Holon& owner = h.at(soc);
  std::vector<ServiceEntry> out;
  if (!owner.is_composite()) return out;
  for (HolonId m : owner.members) {
    const Holon* member = h.find(m);
    if (member == nullptr) continue;
    if (member->is_atomic()) {
      for (RoleId r : member->capabilities) out.push_back({m, r, member->topics, owner.created_at, m});
      continue;
    }
    for (ServiceEntry e : service_entries_for(h, m)) {
      e.registered_at = std::max(e.registered_at, owner.created_at);
      e.via = m;
      out.push_back(std::move(e));
    }
  }
  return out;
}

RegistryBook make_registries(const Holarchy& h) {
  RegistryBook book;
  refresh_registries(book, h);
  return book;
}

void refresh_registries(RegistryBook& book, const Holarchy& h) {
  for (auto it = book.begin(); it != book.end();) {
    const Holon* holon = h.find(it->first);
    it = (holon == nullptr || !holon->is_composite()) ? book.erase(it) : std::next(it);
  }
  for (HolonId soc : h.composite_holons()) {
    auto [it, inserted] = book.try_emplace(soc, soc);
    it->second.replace_services(service_entries_for(h, soc));
  }
}

}  // namespace fso
