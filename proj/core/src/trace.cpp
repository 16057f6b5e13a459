#include "fso/trace.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace fso {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename T>
constexpr const char* kind_name() {
  if constexpr (std::is_same_v<T, RunStarted>) return "RunStarted";
  if constexpr (std::is_same_v<T, EventPublished>) return "EventPublished";
  if constexpr (std::is_same_v<T, ActivityTriggered>) return "ActivityTriggered";
  if constexpr (std::is_same_v<T, ExceptionRaised>) return "ExceptionRaised";
  if constexpr (std::is_same_v<T, SonFormed>) return "SonFormed";
  if constexpr (std::is_same_v<T, SonDissolved>) return "SonDissolved";
  if constexpr (std::is_same_v<T, RequestUnresolved>) return "RequestUnresolved";
  if constexpr (std::is_same_v<T, Permanentified>) return "Permanentified";
  if constexpr (std::is_same_v<T, Pruned>) return "Pruned";
}

template <typename Id>
ordered_json id_list(const std::vector<Id>& ids) {
  ordered_json arr = ordered_json::array();
  for (Id id : ids) arr.push_back(id.value());
  return arr;
}

ordered_json members_json(const Assignment& members) {
  ordered_json arr = ordered_json::array();
  for (const auto& [h, r] : members) arr.push_back(ordered_json::array({h.value(), r.value()}));
  return arr;
}

ordered_json payload_json(const Payload& p) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RunStarted>) {
          return {{"atomic_holons", v.atomic_holons}, {"seed", v.seed}, {"horizon", v.horizon}};
        } else if constexpr (std::is_same_v<T, EventPublished>) {
          return {{"event", v.event}, {"source", v.source}, {"soc", v.soc.value()}, {"topic", v.topic},
                  {"publisher", v.publisher.value()}};
        } else if constexpr (std::is_same_v<T, ActivityTriggered>) {
          return {{"request", v.request.value()}, {"activity", v.activity}, {"soc", v.soc.value()}, {"event", v.event}};
        } else if constexpr (std::is_same_v<T, ExceptionRaised>) {
          return {{"request", v.request.value()}, {"attempt", v.attempt}, {"from", v.from.value()},
                  {"to", v.to.value()}, {"hop", v.hop}};
        } else if constexpr (std::is_same_v<T, SonFormed>) {
          return {{"son", v.son.value()},         {"request", v.request.value()}, {"activity", v.activity},
                  {"members", members_json(v.members)}, {"spanned", id_list(v.spanned)}, {"hop", v.hop},
                  {"attempt", v.attempt},          {"triggered_at", v.triggered_at}, {"dissolves_at", v.dissolves_at}};
        } else if constexpr (std::is_same_v<T, SonDissolved>) {
          return {{"son", v.son.value()},
                  {"request", v.request.value()},
                  {"activity", v.activity},
                  {"members", members_json(v.members)},
                  {"formed_at", v.formed_at},
                  {"outcome", v.outcome == Outcome::success ? "success" : "failure"}};
        } else if constexpr (std::is_same_v<T, RequestUnresolved>) {
          return {{"request", v.request.value()},
                  {"activity", v.activity},
                  {"attempt", v.attempt},
                  {"hop", v.hop},
                  {"missing_roles", id_list(v.missing_roles)},
                  {"missing_data", v.missing_data},
                  {"final", v.final}};
        } else if constexpr (std::is_same_v<T, Permanentified>) {
          return {{"soc", v.soc.value()}, {"parent", v.parent.value()}, {"activity", v.activity},
                  {"members", id_list(v.members)}};
        } else {
          return {{"soc", v.soc.value()}, {"failures", v.failures}, {"members", id_list(v.members)}};
        }
      },
      p);
}

// Strict field readers; every failure surfaces as MalformedTrace.
struct Reader {
  const ordered_json& j;

  const ordered_json& field(const char* key) const {
    auto it = j.find(key);
    if (it == j.end()) throw MalformedTrace(std::string("missing field '") + key + "'");
    return *it;
  }
  std::uint64_t u64(const char* key) const {
    const auto& v = field(key);
    if (!v.is_number_unsigned()) throw MalformedTrace(std::string("field '") + key + "' is not a non-negative integer");
    return v.get<std::uint64_t>();
  }
  Tick tick(const char* key) const {
    const auto& v = field(key);
    if (!v.is_number_integer()) throw MalformedTrace(std::string("field '") + key + "' is not an integer");
    return v.get<Tick>();
  }
  std::string str(const char* key) const {
    const auto& v = field(key);
    if (!v.is_string()) throw MalformedTrace(std::string("field '") + key + "' is not a string");
    return v.get<std::string>();
  }
  bool boolean(const char* key) const {
    const auto& v = field(key);
    if (!v.is_boolean()) throw MalformedTrace(std::string("field '") + key + "' is not a boolean");
    return v.get<bool>();
  }
  template <typename Id>
  std::vector<Id> ids(const char* key) const {
    const auto& v = field(key);
    if (!v.is_array()) throw MalformedTrace(std::string("field '") + key + "' is not an array");
    std::vector<Id> out;
    for (const auto& e : v) {
      if (!e.is_number_unsigned()) throw MalformedTrace(std::string("field '") + key + "' holds a non-id");
      out.push_back(Id{e.get<std::uint64_t>()});
    }
    return out;
  }
  std::vector<std::string> strings(const char* key) const {
    const auto& v = field(key);
    if (!v.is_array()) throw MalformedTrace(std::string("field '") + key + "' is not an array");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) throw MalformedTrace(std::string("field '") + key + "' holds a non-string");
      out.push_back(e.get<std::string>());
    }
    return out;
  }
  Assignment members(const char* key) const {
    const auto& v = field(key);
    if (!v.is_array()) throw MalformedTrace(std::string("field '") + key + "' is not an array");
    Assignment out;
    for (const auto& e : v) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
        throw MalformedTrace(std::string("field '") + key + "' holds a malformed member");
      out.emplace_back(HolonId{e[0].get<std::uint64_t>()}, RoleId{e[1].get<std::uint64_t>()});
    }
    return out;
  }
};

Payload parse_payload(std::string_view kind, const ordered_json& j) {
  if (!j.is_object()) throw MalformedTrace("payload is not an object");
  Reader r{j};
  if (kind == "RunStarted") return RunStarted{r.u64("atomic_holons"), r.u64("seed"), r.tick("horizon")};
  if (kind == "EventPublished")
    return EventPublished{r.u64("event"), r.u64("source"), HolonId{r.u64("soc")}, r.str("topic"),
                          HolonId{r.u64("publisher")}};
  if (kind == "ActivityTriggered")
    return ActivityTriggered{RequestId{r.u64("request")}, r.str("activity"), HolonId{r.u64("soc")}, r.u64("event")};
  if (kind == "ExceptionRaised")
    return ExceptionRaised{RequestId{r.u64("request")}, r.u64("attempt"), HolonId{r.u64("from")},
                           HolonId{r.u64("to")}, r.u64("hop")};
  if (kind == "SonFormed")
    return SonFormed{SonId{r.u64("son")},      RequestId{r.u64("request")}, r.str("activity"),
                     r.members("members"),     r.ids<HolonId>("spanned"),   r.u64("hop"),
                     r.u64("attempt"),         r.tick("triggered_at"),      r.tick("dissolves_at")};
  if (kind == "SonDissolved") {
    const std::string outcome = r.str("outcome");
    if (outcome != "success" && outcome != "failure") throw MalformedTrace("unknown outcome '" + outcome + "'");
    return SonDissolved{SonId{r.u64("son")}, RequestId{r.u64("request")}, r.str("activity"), r.members("members"),
                        r.tick("formed_at"), outcome == "success" ? Outcome::success : Outcome::failure};
  }
  if (kind == "RequestUnresolved")
    return RequestUnresolved{RequestId{r.u64("request")}, r.str("activity"),        r.u64("attempt"),
                             r.u64("hop"),                r.ids<RoleId>("missing_roles"), r.strings("missing_data"),
                             r.boolean("final")};
  if (kind == "Permanentified")
    return Permanentified{HolonId{r.u64("soc")}, HolonId{r.u64("parent")}, r.str("activity"), r.ids<HolonId>("members")};
  if (kind == "Pruned") return Pruned{HolonId{r.u64("soc")}, r.u64("failures"), r.ids<HolonId>("members")};
  throw MalformedTrace("unknown record kind '" + std::string(kind) + "'");
}

}  // namespace

std::string_view TraceRecord::kind() const {
  return std::visit([](const auto& v) -> std::string_view { return kind_name<std::decay_t<decltype(v)>>(); }, payload);
}

std::string to_json_line(const TraceRecord& r) {
  ordered_json j;
  j["tick"] = r.tick;
  j["kind"] = std::string(r.kind());
  j["payload"] = payload_json(r.payload);
  return j.dump();
}

TraceRecord parse_json_line(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line.begin(), line.end());
  } catch (const ordered_json::parse_error& e) {
    throw MalformedTrace(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw MalformedTrace("record is not an object");
  for (const auto& [key, value] : j.items())
    if (key != "tick" && key != "kind" && key != "payload") throw MalformedTrace("unknown key '" + key + "'");
  Reader r{j};
  TraceRecord rec;
  rec.tick = r.tick("tick");
  rec.payload = parse_payload(r.str("kind"), r.field("payload"));
  return rec;
}

std::string write_trace(std::span<const TraceRecord> records) {
  std::string out;
  for (const TraceRecord& r : records) {
    out += to_json_line(r);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> read_trace(std::istream& in) {
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const MalformedTrace& e) {
      throw MalformedTrace("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TraceRecord> read_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_trace(in);
}

}  // namespace fso
