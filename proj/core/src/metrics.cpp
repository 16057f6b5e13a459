#include "fso/metrics.hpp"

#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace fso {

namespace {

std::string id_text(std::uint64_t id) { return std::to_string(id); }

}  // namespace

Metrics report(std::span<const TraceRecord> trace) {
  Metrics m;
  if (trace.empty()) return m;

  const auto* header = std::get_if<RunStarted>(&trace.front().payload);
  if (header == nullptr) throw MalformedTrace("trace does not start with RunStarted");

  std::map<SonId, std::size_t> open_sons;  // son -> member count
  std::set<SonId> seen_sons;
  std::set<RequestId> triggered;
  std::set<RequestId> closed;
  std::uint64_t hop_sum = 0;
  Tick latency_sum = 0;
  Tick last_tick = trace.front().tick;

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRecord& rec = trace[i];
    if (rec.tick < last_tick) throw MalformedTrace("record " + id_text(i) + " goes back in time");
    last_tick = rec.tick;

    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, RunStarted>) {
            if (i != 0) throw MalformedTrace("RunStarted after the first record");
          } else if constexpr (std::is_same_v<T, EventPublished>) {
            ++m.events_published;
          } else if constexpr (std::is_same_v<T, ActivityTriggered>) {
            if (!triggered.insert(p.request).second)
              throw MalformedTrace("request " + id_text(p.request.value()) + " triggered twice");
            ++m.activities_triggered;
          } else if constexpr (std::is_same_v<T, ExceptionRaised>) {
            if (!triggered.contains(p.request)) throw MalformedTrace("exception for an untriggered request");
            ++m.exceptions_raised;
          } else if constexpr (std::is_same_v<T, SonFormed>) {
            if (!triggered.contains(p.request) || !closed.insert(p.request).second)
              throw MalformedTrace("SON " + id_text(p.son.value()) + " formed for an unknown or closed request");
            if (!seen_sons.insert(p.son).second) throw MalformedTrace("SON " + id_text(p.son.value()) + " formed twice");
            open_sons[p.son] = p.members.size();
            ++m.sons_formed;
            hop_sum += p.hop;
            latency_sum += rec.tick - p.triggered_at;
          } else if constexpr (std::is_same_v<T, SonDissolved>) {
            auto it = open_sons.find(p.son);
            if (it == open_sons.end()) throw MalformedTrace("SON " + id_text(p.son.value()) + " dissolved but not open");
            open_sons.erase(it);
            ++m.sons_dissolved;
          } else if constexpr (std::is_same_v<T, RequestUnresolved>) {
            if (!triggered.contains(p.request) || closed.contains(p.request))
              throw MalformedTrace("unresolved record for an unknown or closed request");
            if (p.final) {
              closed.insert(p.request);
              ++m.unresolved_requests;
            }
          } else if constexpr (std::is_same_v<T, Permanentified>) {
            ++m.permanentifications;
          } else if constexpr (std::is_same_v<T, Pruned>) {
            ++m.prunings;
          }
        },
        rec.payload);
  }

  m.pending_requests = m.activities_triggered - m.sons_formed - m.unresolved_requests;
  if (m.sons_formed > 0) {
    m.mean_hop_count = static_cast<double>(hop_sum) / static_cast<double>(m.sons_formed);
    m.mean_response_latency = static_cast<double>(latency_sum) / static_cast<double>(m.sons_formed);
  }
  for (const auto& [son, size] : open_sons) m.final_active += size;
  if (m.final_active > header->atomic_holons) throw MalformedTrace("more active holons than atomic holons");
  m.final_inactive = header->atomic_holons - m.final_active;
  return m;
}

std::string metrics_to_json(const Metrics& m) {
  nlohmann::ordered_json j;
  j["events_published"] = m.events_published;
  j["activities_triggered"] = m.activities_triggered;
  j["sons_formed"] = m.sons_formed;
  j["sons_dissolved"] = m.sons_dissolved;
  j["exceptions_raised"] = m.exceptions_raised;
  j["mean_hop_count"] = m.mean_hop_count;
  j["mean_response_latency"] = m.mean_response_latency;
  j["unresolved_requests"] = m.unresolved_requests;
  j["pending_requests"] = m.pending_requests;
  j["permanentifications"] = m.permanentifications;
  j["prunings"] = m.prunings;
  j["final_partition_sizes"] = nlohmann::ordered_json::array({m.final_inactive, m.final_active});
  return j.dump(2) + "\n";
}

}  // namespace fso
