#include "fso/holarchy.hpp"

#include <algorithm>
#include <sstream>

namespace fso {

namespace {

std::string describe(const char* what, HolonId id) {
  std::ostringstream os;
  os << what << " (holon " << id << ")";
  return os.str();
}

HolarchyErrc errc_for(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_id:
      return HolarchyErrc::duplicate_id;
    case ViolationKind::unknown_role:
      return HolarchyErrc::unknown_role;
    case ViolationKind::unknown_member:
      return HolarchyErrc::unknown_holon;
    case ViolationKind::missing_representative:
    case ViolationKind::representative_not_member:
      return HolarchyErrc::representative_not_member;
    case ViolationKind::multiple_parents:
    case ViolationKind::cycle:
    case ViolationKind::root_count:
      return HolarchyErrc::cycle_detected;
    case ViolationKind::atomic_has_members:
    case ViolationKind::composite_has_capabilities:
    case ViolationKind::empty_composite:
    case ViolationKind::affiliate_not_atomic:
    case ViolationKind::affiliate_outside_parent:
      return HolarchyErrc::malformed_holon;
  }
  return HolarchyErrc::malformed_holon;
}

}  // namespace

const char* to_string(HolarchyErrc code) {
  switch (code) {
    case HolarchyErrc::duplicate_id:
      return "DuplicateId";
    case HolarchyErrc::cycle_detected:
      return "CycleDetected";
    case HolarchyErrc::representative_not_member:
      return "RepresentativeNotMember";
    case HolarchyErrc::unknown_role:
      return "UnknownRole";
    case HolarchyErrc::unknown_holon:
      return "UnknownHolon";
    case HolarchyErrc::not_composite:
      return "NotComposite";
    case HolarchyErrc::malformed_holon:
      return "MalformedHolon";
  }
  return "?";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_id:
      return "DuplicateId";
    case ViolationKind::unknown_role:
      return "UnknownRole";
    case ViolationKind::unknown_member:
      return "UnknownMember";
    case ViolationKind::atomic_has_members:
      return "AtomicHasMembers";
    case ViolationKind::composite_has_capabilities:
      return "CompositeHasCapabilities";
    case ViolationKind::empty_composite:
      return "EmptyComposite";
    case ViolationKind::missing_representative:
      return "MissingRepresentative";
    case ViolationKind::representative_not_member:
      return "RepresentativeNotMember";
    case ViolationKind::multiple_parents:
      return "MultipleParents";
    case ViolationKind::cycle:
      return "Cycle";
    case ViolationKind::root_count:
      return "RootCount";
    case ViolationKind::affiliate_not_atomic:
      return "AffiliateNotAtomic";
    case ViolationKind::affiliate_outside_parent:
      return "AffiliateOutsideParent";
  }
  return "?";
}

Holarchy Holarchy::from_parts(std::set<RoleId> roles, std::vector<Holon> holons) {
  Holarchy h;
  h.roles_ = std::move(roles);
  for (auto& holon : holons) {
    const HolonId id = holon.id;
    if (!h.holons_.emplace(id, std::move(holon)).second) h.duplicates_.push_back(id);
  }
  h.index();
  return h;
}

void Holarchy::index() {
  parent_.clear();
  extra_parents_.clear();
  affiliations_.clear();
  for (const auto& [id, holon] : holons_) {
    if (!holon.is_composite()) continue;
    for (HolonId m : holon.members) {
      if (holon.origin == Origin::permanentified) {
        affiliations_[m].push_back(id);
        continue;
      }
      auto [it, inserted] = parent_.emplace(m, id);
      if (!inserted) extra_parents_[m].push_back(id);
    }
  }
  root_ = HolonId{};
  for (const auto& [id, holon] : holons_) {
    if (!parent_.contains(id)) {
      root_ = id;
      break;
    }
  }
}

const Holon* Holarchy::find(HolonId id) const {
  auto it = holons_.find(id);
  return it == holons_.end() ? nullptr : &it->second;
}

const Holon& Holarchy::at(HolonId id) const {
  if (const Holon* h = find(id)) return *h;
  throw HolarchyError(HolarchyErrc::unknown_holon, id, describe("unknown holon", id));
}

std::optional<HolonId> Holarchy::parent_of(HolonId id) const {
  auto it = parent_.find(id);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

std::vector<HolonId> Holarchy::affiliations_of(HolonId id) const {
  auto it = affiliations_.find(id);
  return it == affiliations_.end() ? std::vector<HolonId>{} : it->second;
}

std::size_t Holarchy::depth_of(HolonId id) const {
  std::size_t d = 0;
  for (auto p = parent_of(id); p && d <= holons_.size(); p = parent_of(*p)) ++d;
  return d;
}

std::size_t Holarchy::depth() const {
  std::size_t d = 0;
  for (const auto& [id, holon] : holons_) d = std::max(d, depth_of(id));
  return d;
}

std::vector<HolonId> Holarchy::atomic_holons() const {
  std::vector<HolonId> out;
  for (const auto& [id, holon] : holons_)
    if (holon.is_atomic()) out.push_back(id);
  return out;
}

std::vector<HolonId> Holarchy::composite_holons() const {
  std::vector<HolonId> out;
  for (const auto& [id, holon] : holons_)
    if (holon.is_composite()) out.push_back(id);
  return out;
}

std::set<RoleId> Holarchy::capabilities_of(HolonId id) const {
  const Holon& holon = at(id);
  if (holon.is_atomic()) return holon.capabilities;
  std::set<RoleId> out;
  std::vector<HolonId> stack(holon.members.begin(), holon.members.end());
  std::set<HolonId> seen;
  while (!stack.empty()) {
    HolonId m = stack.back();
    stack.pop_back();
    if (!seen.insert(m).second) continue;
    const Holon* mh = find(m);
    if (mh == nullptr) continue;
    if (mh->is_atomic()) {
      out.insert(mh->capabilities.begin(), mh->capabilities.end());
    } else {
      stack.insert(stack.end(), mh->members.begin(), mh->members.end());
    }
  }
  return out;
}

bool Holarchy::is_in_subtree(HolonId id, HolonId ancestor) const {
  std::size_t steps = 0;
  for (std::optional<HolonId> cur = id; cur && steps <= holons_.size(); cur = parent_of(*cur), ++steps) {
    if (*cur == ancestor) return true;
  }
  return false;
}

HolonId Holarchy::lowest_common_ancestor(std::span<const HolonId> ids) const {
  if (ids.empty()) return root_;
  auto path_to_root = [this](HolonId id) {
    std::vector<HolonId> path{id};
    for (auto p = parent_of(id); p && path.size() <= holons_.size(); p = parent_of(*p)) path.push_back(*p);
    std::reverse(path.begin(), path.end());
    return path;
  };
  std::vector<HolonId> common = path_to_root(ids.front());
  for (HolonId id : ids.subspan(1)) {
    std::vector<HolonId> path = path_to_root(id);
    std::size_t n = 0;
    while (n < common.size() && n < path.size() && common[n] == path[n]) ++n;
    common.resize(n);
  }
  return common.empty() ? root_ : common.back();
}

HolonId Holarchy::next_free_id() const {
  return holons_.empty() ? HolonId{0} : HolonId{holons_.rbegin()->first.value() + 1};
}

Holarchy Holarchy::with_composite(Holon soc, HolonId parent) const {
  Holarchy h = *this;
  const HolonId id = soc.id;
  h.holons_[id] = std::move(soc);
  h.holons_.at(parent).members.push_back(id);
  h.index();
  return h;
}

Holarchy Holarchy::without_composite(HolonId soc) const {
  Holarchy h = *this;
  if (auto p = parent_of(soc)) {
    auto& members = h.holons_.at(*p).members;
    members.erase(std::remove(members.begin(), members.end(), soc), members.end());
  }
  h.holons_.erase(soc);
  h.index();
  return h;
}

Holarchy build_holarchy(const HolarchySpec& spec) {
  std::set<RoleId> roles;
  for (const RoleSpec& r : spec.roles) {
    if (!roles.insert(r.id).second) {
      std::ostringstream os;
      os << "duplicate role " << r.id;
      throw HolarchyError(HolarchyErrc::duplicate_id, HolonId{}, os.str());
    }
  }

  std::vector<Holon> holons;
  holons.reserve(spec.holons.size());
  for (const HolonSpec& hs : spec.holons) {
    Holon h;
    h.id = hs.id;
    h.kind = hs.kind;
    h.capabilities.insert(hs.capabilities.begin(), hs.capabilities.end());
    h.topics.insert(hs.topics.begin(), hs.topics.end());
    h.members = hs.members;
    h.name = hs.name;
    h.representative = hs.representative;
    if (h.is_composite() && !h.representative && !h.members.empty())
      h.representative = *std::min_element(h.members.begin(), h.members.end());
    holons.push_back(std::move(h));
  }

  Holarchy h = Holarchy::from_parts(std::move(roles), std::move(holons));
  std::vector<Violation> violations = validate(h);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw HolarchyError(errc_for(v.kind), v.holon, v.detail);
  }
  return h;
}

std::optional<HolonId> higher_up_of(const Holarchy& h, HolonId soc) {
  const Holon& holon = h.at(soc);
  if (!holon.is_composite())
    throw HolarchyError(HolarchyErrc::not_composite, soc, describe("not a composite", soc));
  return h.parent_of(soc);
}

std::set<HolonId> visible_community_of(const Holarchy& h, HolonId a) {
  (void)h.at(a);
  auto parent = h.parent_of(a);
  if (!parent) return {a};
  const Holon& soc = h.at(*parent);
  std::set<HolonId> out(soc.members.begin(), soc.members.end());
  if (soc.representative) out.insert(*soc.representative);
  return out;
}

std::vector<Violation> validate(const Holarchy& h) {
  std::vector<Violation> out;
  auto add = [&out](ViolationKind kind, HolonId id, const std::string& detail) {
    out.push_back({kind, id, detail});
  };

  for (HolonId id : h.duplicate_ids()) add(ViolationKind::duplicate_id, id, describe("duplicate id", id));

  for (const auto& [id, holon] : h.holons()) {
    for (RoleId r : holon.capabilities) {
      if (!h.roles().contains(r)) {
        std::ostringstream os;
        os << "role " << r << " not declared (holon " << id << ")";
        add(ViolationKind::unknown_role, id, os.str());
      }
    }
  }

  for (const auto& [id, holon] : h.holons()) {
    for (HolonId m : holon.members)
      if (!h.contains(m)) add(ViolationKind::unknown_member, id, describe("unknown member", m));
  }

  for (const auto& [id, holon] : h.holons()) {
    if (holon.is_atomic()) {
      if (!holon.members.empty() || holon.representative)
        add(ViolationKind::atomic_has_members, id, describe("atomic holon with members", id));
      continue;
    }
    if (!holon.capabilities.empty())
      add(ViolationKind::composite_has_capabilities, id, describe("composite with own capabilities", id));
    if (holon.members.empty()) add(ViolationKind::empty_composite, id, describe("composite without members", id));
    if (!holon.representative) {
      add(ViolationKind::missing_representative, id, describe("composite without representative", id));
    } else if (std::find(holon.members.begin(), holon.members.end(), *holon.representative) ==
               holon.members.end()) {
      add(ViolationKind::representative_not_member, id, describe("representative outside its SoC", id));
    }
  }

  // Tree shape over non-affiliation edges.
  std::map<HolonId, int> parent_count;
  for (const auto& [id, holon] : h.holons()) {
    if (!holon.is_composite() || holon.origin == Origin::permanentified) continue;
    for (HolonId m : holon.members) ++parent_count[m];
  }
  for (const auto& [m, count] : parent_count)
    if (count > 1) add(ViolationKind::multiple_parents, m, describe("member of several SoCs", m));

  std::size_t roots = 0;
  for (const auto& [id, holon] : h.holons())
    if (!h.parent_of(id)) ++roots;
  if (!h.holons().empty() && roots != 1) {
    std::ostringstream os;
    os << roots << " holons without parent";
    add(ViolationKind::root_count, h.root(), os.str());
  }

  std::set<HolonId> reported;
  for (const auto& [id, holon] : h.holons()) {
    std::set<HolonId> seen{id};
    for (auto p = h.parent_of(id); p; p = h.parent_of(*p)) {
      if (!seen.insert(*p).second) {
        if (reported.insert(*p).second) add(ViolationKind::cycle, *p, describe("membership cycle", *p));
        break;
      }
    }
  }

  for (const auto& [id, holon] : h.holons()) {
    if (!holon.is_composite() || holon.origin != Origin::permanentified) continue;
    auto parent = h.parent_of(id);
    for (HolonId m : holon.members) {
      const Holon* mh = h.find(m);
      if (mh == nullptr) continue;
      if (!mh->is_atomic()) add(ViolationKind::affiliate_not_atomic, id, describe("non-atomic affiliate", m));
      if (parent && !h.is_in_subtree(m, *parent))
        add(ViolationKind::affiliate_outside_parent, id, describe("affiliate outside attachment SoC", m));
    }
  }
  return out;
}

}  // namespace fso
