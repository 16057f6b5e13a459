#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fso/ids.hpp"

namespace fso {

enum class HolonKind { atomic, composite };

/// Institutional holons come from the scenario; permanentified ones are created by evolution.
enum class Origin { institutional, permanentified };

struct RoleSpec {
  RoleId id;
  std::string name;

  friend bool operator==(const RoleSpec&, const RoleSpec&) = default;
};

/// One holon as written in a scenario file, before any validation.
struct HolonSpec {
  HolonId id;
  HolonKind kind = HolonKind::atomic;
  std::vector<RoleId> capabilities;
  std::vector<std::string> topics;
  std::vector<HolonId> members;
  std::optional<HolonId> representative;
  std::string name;

  friend bool operator==(const HolonSpec&, const HolonSpec&) = default;
};

struct HolarchySpec {
  std::vector<RoleSpec> roles;
  std::vector<HolonSpec> holons;

  friend bool operator==(const HolarchySpec&, const HolarchySpec&) = default;
};

struct Holon {
  HolonId id;
  HolonKind kind = HolonKind::atomic;
  std::set<RoleId> capabilities;  // atomic only
  std::set<std::string> topics;   // atomic only; advertised with its service entries
  std::vector<HolonId> members;   // composite only
  std::optional<HolonId> representative;
  std::string name;
  Origin origin = Origin::institutional;
  Tick created_at = 0;

  [[nodiscard]] bool is_atomic() const { return kind == HolonKind::atomic; }
  [[nodiscard]] bool is_composite() const { return kind == HolonKind::composite; }

  friend bool operator==(const Holon&, const Holon&) = default;
};

enum class HolarchyErrc {
  duplicate_id,
  cycle_detected,
  representative_not_member,
  unknown_role,
  unknown_holon,
  not_composite,
  malformed_holon,
};

[[nodiscard]] const char* to_string(HolarchyErrc code);

class HolarchyError : public std::runtime_error {
 public:
  HolarchyError(HolarchyErrc code, HolonId holon, const std::string& what)
      : std::runtime_error(what), code_(code), holon_(holon) {}

  [[nodiscard]] HolarchyErrc code() const { return code_; }
  [[nodiscard]] HolonId holon() const { return holon_; }

 private:
  HolarchyErrc code_;
  HolonId holon_;
};

enum class ViolationKind {
  duplicate_id,
  unknown_role,
  unknown_member,
  atomic_has_members,
  composite_has_capabilities,
  empty_composite,
  missing_representative,
  representative_not_member,
  multiple_parents,
  cycle,
  root_count,
  affiliate_not_atomic,
  affiliate_outside_parent,
};

[[nodiscard]] const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  HolonId holon;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// A holarchy of atomic actors and composite service-oriented communities (SoCs).
///
/// Tree edges are the memberships of institutional SoCs, plus the edge from a
/// permanentified SoC to the SoC it is attached to. Members of a permanentified
/// SoC keep their original parent; for them the new SoC is an extra affiliation.
/// Instances are values: evolution produces a new holarchy instead of mutating one.
class Holarchy {
 public:
  Holarchy() = default;

  /// Assembles a holarchy without checking any invariant. `validate` reports what is wrong.
  static Holarchy from_parts(std::set<RoleId> roles, std::vector<Holon> holons);

  [[nodiscard]] const std::map<HolonId, Holon>& holons() const { return holons_; }
  [[nodiscard]] const std::set<RoleId>& roles() const { return roles_; }
  [[nodiscard]] bool contains(HolonId id) const { return holons_.contains(id); }
  [[nodiscard]] const Holon* find(HolonId id) const;
  /// Throws HolarchyError(unknown_holon).
  [[nodiscard]] const Holon& at(HolonId id) const;

  [[nodiscard]] HolonId root() const { return root_; }
  /// Tree parent; none for the root.
  [[nodiscard]] std::optional<HolonId> parent_of(HolonId id) const;
  /// Permanentified SoCs listing `id` as a member.
  [[nodiscard]] std::vector<HolonId> affiliations_of(HolonId id) const;

  /// Number of edges from the root to `id`.
  [[nodiscard]] std::size_t depth_of(HolonId id) const;
  /// Largest depth of any holon.
  [[nodiscard]] std::size_t depth() const;

  [[nodiscard]] std::vector<HolonId> atomic_holons() const;
  [[nodiscard]] std::vector<HolonId> composite_holons() const;
  /// Atomic: declared capabilities. Composite: union over its members.
  [[nodiscard]] std::set<RoleId> capabilities_of(HolonId id) const;
  /// True when `id` is `ancestor` or lies below it along tree edges.
  [[nodiscard]] bool is_in_subtree(HolonId id, HolonId ancestor) const;
  [[nodiscard]] HolonId lowest_common_ancestor(std::span<const HolonId> ids) const;
  [[nodiscard]] HolonId next_free_id() const;

  /// Copy with `soc` attached as the last member of `parent`.
  [[nodiscard]] Holarchy with_composite(Holon soc, HolonId parent) const;
  /// Copy with `soc` and its edge from the parent removed. Only meaningful for permanentified SoCs.
  [[nodiscard]] Holarchy without_composite(HolonId soc) const;

  friend bool operator==(const Holarchy& a, const Holarchy& b) {
    return a.roles_ == b.roles_ && a.holons_ == b.holons_;
  }

  // Bookkeeping of from_parts for validate().
  [[nodiscard]] const std::vector<HolonId>& duplicate_ids() const { return duplicates_; }

 private:
  void index();

  std::set<RoleId> roles_;
  std::map<HolonId, Holon> holons_;
  std::map<HolonId, HolonId> parent_;
  std::map<HolonId, std::vector<HolonId>> extra_parents_;
  std::map<HolonId, std::vector<HolonId>> affiliations_;
  std::vector<HolonId> duplicates_;
  HolonId root_{};
};

/// Materializes and validates a holarchy. Representatives default to the lowest member id.
/// Throws HolarchyError for the first broken invariant.
[[nodiscard]] Holarchy build_holarchy(const HolarchySpec& spec);

/// Parent SoC of a composite, none for the root.
[[nodiscard]] std::optional<HolonId> higher_up_of(const Holarchy& h, HolonId soc);

/// Members of the SoC enclosing `a`, plus that SoC's representative.
[[nodiscard]] std::set<HolonId> visible_community_of(const Holarchy& h, HolonId a);

/// Empty iff every structural invariant holds.
[[nodiscard]] std::vector<Violation> validate(const Holarchy& h);

}  // namespace fso
