#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace fso {

/// Logical time in ticks. Signed so that "before the first tick" (-1) is representable.
using Tick = std::int64_t;

template <typename Tag>
class StrongId {
 public:
  using rep_type = std::uint64_t;

  constexpr StrongId() = default;
  constexpr explicit StrongId(rep_type v) : value_(v) {}

  [[nodiscard]] constexpr rep_type value() const { return value_; }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;

  friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value_; }

 private:
  rep_type value_ = 0;
};

struct HolonTag {};
struct RoleTag {};
struct SonTag {};
struct RequestTag {};

using HolonId = StrongId<HolonTag>;
using RoleId = StrongId<RoleTag>;
using SonId = StrongId<SonTag>;
using RequestId = StrongId<RequestTag>;

}  // namespace fso

template <typename Tag>
struct std::hash<fso::StrongId<Tag>> {
  std::size_t operator()(fso::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value());
  }
};
