#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fso/canon.hpp"
#include "fso/evolution.hpp"
#include "fso/ids.hpp"

namespace fso {

// Payloads, one per record kind. Ids are integers, times are ticks; no floating point.

/// Header written once per run with a positive horizon.
struct RunStarted {
  std::uint64_t atomic_holons = 0;
  std::uint64_t seed = 0;
  Tick horizon = 0;
  friend bool operator==(const RunStarted&, const RunStarted&) = default;
};

struct EventPublished {
  std::uint64_t event = 0;
  std::uint64_t source = 0;
  HolonId soc;
  std::string topic;
  HolonId publisher;
  friend bool operator==(const EventPublished&, const EventPublished&) = default;
};

struct ActivityTriggered {
  RequestId request;
  std::string activity;
  HolonId soc;
  std::uint64_t event = 0;
  friend bool operator==(const ActivityTriggered&, const ActivityTriggered&) = default;
};

struct ExceptionRaised {
  RequestId request;
  std::uint64_t attempt = 0;
  HolonId from;
  HolonId to;
  std::uint64_t hop = 0;
  friend bool operator==(const ExceptionRaised&, const ExceptionRaised&) = default;
};

struct SonFormed {
  SonId son;
  RequestId request;
  std::string activity;
  Assignment members;
  std::vector<HolonId> spanned;
  std::uint64_t hop = 0;
  std::uint64_t attempt = 0;
  Tick triggered_at = 0;
  Tick dissolves_at = 0;
  friend bool operator==(const SonFormed&, const SonFormed&) = default;
};

struct SonDissolved {
  SonId son;
  RequestId request;
  std::string activity;
  Assignment members;
  Tick formed_at = 0;
  Outcome outcome = Outcome::success;
  friend bool operator==(const SonDissolved&, const SonDissolved&) = default;
};

struct RequestUnresolved {
  RequestId request;
  std::string activity;
  std::uint64_t attempt = 0;
  std::uint64_t hop = 0;
  std::vector<RoleId> missing_roles;
  std::vector<std::string> missing_data;
  bool final = false;
  friend bool operator==(const RequestUnresolved&, const RequestUnresolved&) = default;
};

struct Permanentified {
  HolonId soc;
  HolonId parent;
  std::string activity;
  std::vector<HolonId> members;
  friend bool operator==(const Permanentified&, const Permanentified&) = default;
};

struct Pruned {
  HolonId soc;
  std::uint64_t failures = 0;
  std::vector<HolonId> members;
  friend bool operator==(const Pruned&, const Pruned&) = default;
};

using Payload = std::variant<RunStarted, EventPublished, ActivityTriggered, ExceptionRaised, SonFormed, SonDissolved,
                             RequestUnresolved, Permanentified, Pruned>;

struct TraceRecord {
  Tick tick = 0;
  Payload payload;

  /// "EventPublished", "SonFormed", ...
  [[nodiscard]] std::string_view kind() const;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

class MalformedTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One line of JSON (no trailing newline) with keys tick, kind, payload in that order.
[[nodiscard]] std::string to_json_line(const TraceRecord& r);
/// Throws MalformedTrace.
[[nodiscard]] TraceRecord parse_json_line(std::string_view line);

/// Line-delimited JSON, newline after every record.
[[nodiscard]] std::string write_trace(std::span<const TraceRecord> records);
/// Skips blank lines. Throws MalformedTrace with the offending line number.
[[nodiscard]] std::vector<TraceRecord> read_trace(std::istream& in);
[[nodiscard]] std::vector<TraceRecord> read_trace(std::string_view text);

}  // namespace fso
