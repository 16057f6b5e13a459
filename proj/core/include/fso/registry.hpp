#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fso/holarchy.hpp"
#include "fso/ids.hpp"

namespace fso {

/// A provider offering one role. `via` is the direct member of the owner SoC
/// through which the provider is exposed: the provider itself when it is a
/// direct atomic member, otherwise the member SoC whose representative forwarded it.
struct ServiceEntry {
  HolonId provider;
  RoleId role;
  std::set<std::string> topics;
  Tick registered_at = 0;
  HolonId via;

  friend bool operator==(const ServiceEntry&, const ServiceEntry&) = default;
};

struct InformationItem {
  std::string topic;
  std::string payload;
  HolonId source;
  Tick published_at = 0;

  friend bool operator==(const InformationItem&, const InformationItem&) = default;
};

/// The registry held by a SoC's representative.
///
/// Service entries are kept in canonical order: (registered_at, provider, role).
/// Information items are append-only with non-decreasing publication time.
class Registry {
 public:
  Registry() = default;
  explicit Registry(HolonId owner) : owner_(owner) {}

  [[nodiscard]] HolonId owner() const { return owner_; }
  [[nodiscard]] const std::vector<ServiceEntry>& service_entries() const { return services_; }
  [[nodiscard]] const std::vector<InformationItem>& info_entries() const { return info_; }

  /// Adds or merges an entry; a (provider, role) pair keeps its earliest registration.
  void register_service(ServiceEntry entry);
  void replace_services(std::vector<ServiceEntry> entries);
  /// Throws std::invalid_argument when published_at goes backwards.
  void append_info(InformationItem item);
  [[nodiscard]] bool has_info(std::string_view topic) const;

 private:
  HolonId owner_;
  std::vector<ServiceEntry> services_;
  std::vector<InformationItem> info_;
};

using RegistryBook = std::map<HolonId, Registry>;

/// Service entries a SoC's registry holds for its current membership: direct
/// atomic members register their capabilities, member SoCs forward their
/// entries through their representative.
[[nodiscard]] std::vector<ServiceEntry> service_entries_for(const Holarchy& h, HolonId soc);

/// One registry per composite, services registered, no information yet.
[[nodiscard]] RegistryBook make_registries(const Holarchy& h);

/// Brings the book in line with a changed holarchy: services are recomputed,
/// information items of surviving SoCs are kept, registries of removed SoCs are dropped.
void refresh_registries(RegistryBook& book, const Holarchy& h);

}  // namespace fso
