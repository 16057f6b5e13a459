#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "fso/trace.hpp"

namespace fso {

/// Run statistics. Computed from the trace alone so anyone holding a trace can audit a run.
///
/// Every triggered request ends in exactly one of: a formed SON, a final
/// RequestUnresolved, or still pending at the horizon, so
/// activities_triggered == sons_formed + unresolved_requests + pending_requests.
struct Metrics {
  std::uint64_t events_published = 0;
  std::uint64_t activities_triggered = 0;
  std::uint64_t sons_formed = 0;
  std::uint64_t sons_dissolved = 0;
  std::uint64_t exceptions_raised = 0;
  double mean_hop_count = 0.0;
  /// Ticks from trigger to SON formation.
  double mean_response_latency = 0.0;
  std::uint64_t unresolved_requests = 0;
  std::uint64_t pending_requests = 0;
  std::uint64_t permanentifications = 0;
  std::uint64_t prunings = 0;
  std::uint64_t final_inactive = 0;
  std::uint64_t final_active = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Throws MalformedTrace when the records are inconsistent.
[[nodiscard]] Metrics report(std::span<const TraceRecord> trace);

/// Single JSON document, two-space indented.
[[nodiscard]] std::string metrics_to_json(const Metrics& m);

}  // namespace fso
