#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fso/holarchy.hpp"
#include "fso/ids.hpp"

namespace fso {

struct Binding {
  RoleId role;
  SonId son;

  friend auto operator<=>(const Binding&, const Binding&) = default;
};

enum class ActivationErrc { already_active, incapable_role, not_active, unknown_holon, too_large };

[[nodiscard]] const char* to_string(ActivationErrc code);

class ActivationError : public std::runtime_error {
 public:
  ActivationError(ActivationErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ActivationErrc code() const { return code_; }

 private:
  ActivationErrc code_;
};

/// The global state of activation: every atomic holon is either inactive (L)
/// or active in exactly one role of one SON (R). Composite holons carry no activation.
class ActivationState {
 public:
  ActivationState() = default;
  /// All atomic holons of `h` start inactive.
  explicit ActivationState(const Holarchy& h);

  /// Unconditional acceptance for an inactive, capable holon.
  void enroll(HolonId a, RoleId r, SonId son);
  void release(HolonId a);

  [[nodiscard]] bool is_inactive(HolonId a) const { return inactive_.contains(a); }
  [[nodiscard]] bool is_active(HolonId a) const { return active_.contains(a); }
  [[nodiscard]] const std::set<HolonId>& inactive() const { return inactive_; }
  [[nodiscard]] const std::map<HolonId, Binding>& active() const { return active_; }
  [[nodiscard]] std::pair<std::set<HolonId>, std::set<HolonId>> partition() const;
  [[nodiscard]] std::size_t population() const { return inactive_.size() + active_.size(); }

  [[nodiscard]] Tick clock() const { return clock_; }
  void set_clock(Tick t) { clock_ = t; }

  /// Human-readable descriptions of broken partition or capability invariants.
  [[nodiscard]] std::vector<std::string> check_invariants() const;

  friend bool operator==(const ActivationState& a, const ActivationState& b) {
    return a.inactive_ == b.inactive_ && a.active_ == b.active_ && a.clock_ == b.clock_;
  }

 private:
  using CapabilityMap = std::map<HolonId, std::set<RoleId>>;

  std::shared_ptr<const CapabilityMap> capabilities_;
  std::set<HolonId> inactive_;
  std::map<HolonId, Binding> active_;
  Tick clock_ = 0;
};

inline constexpr std::size_t kMaxEnumerableAgents = 20;

/// Number of capability-consistent global activation states: the product over
/// atomic holons of (1 + number of capabilities). Throws ActivationError(too_large)
/// above kMaxEnumerableAgents atomic holons.
[[nodiscard]] std::uint64_t enumerate_activation_space(const Holarchy& h);

}  // namespace fso
