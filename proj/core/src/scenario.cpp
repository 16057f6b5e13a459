#include "fso/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fso {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& what) { throw ScenarioError(ScenarioErrc::validation, what); }

void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) invalid(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) invalid(path + ": unknown key '" + key + "'");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) invalid(path + ": missing key '" + key + "'");
  return *it;
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) invalid(path + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

Tick as_tick(const json& j, const std::string& path) {
  if (!j.is_number_integer()) invalid(path + ": expected an integer");
  return j.get<Tick>();
}

double as_real(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(path + ": expected a number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) invalid(path + ": expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path + ": expected an array");
  return j;
}

std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

template <typename T, typename F>
std::vector<T> array_of(const json& j, const std::string& path, F&& each) {
  std::vector<T> out;
  const json& arr = as_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(each(arr[i], at_index(path, i)));
  return out;
}

std::vector<std::string> strings(const json& j, const std::string& path) {
  return array_of<std::string>(j, path, [](const json& e, const std::string& p) { return as_string(e, p); });
}

RoleSpec parse_role(const json& j, const std::string& path) {
  check_keys(j, path, {"id", "name"});
  RoleSpec r;
  r.id = RoleId{as_u64(require(j, path, "id"), path + ".id")};
  if (j.contains("name")) r.name = as_string(j["name"], path + ".name");
  return r;
}

HolonSpec parse_holon(const json& j, const std::string& path) {
  check_keys(j, path, {"id", "kind", "capabilities", "topics", "members", "representative", "name"});
  HolonSpec h;
  h.id = HolonId{as_u64(require(j, path, "id"), path + ".id")};
  const std::string kind = as_string(require(j, path, "kind"), path + ".kind");
  if (kind == "atomic") {
    h.kind = HolonKind::atomic;
  } else if (kind == "composite") {
    h.kind = HolonKind::composite;
  } else {
    invalid(path + ".kind: expected 'atomic' or 'composite'");
  }
  if (j.contains("capabilities"))
    h.capabilities = array_of<RoleId>(j["capabilities"], path + ".capabilities",
                                      [](const json& e, const std::string& p) { return RoleId{as_u64(e, p)}; });
  if (j.contains("topics")) h.topics = strings(j["topics"], path + ".topics");
  if (j.contains("members"))
    h.members = array_of<HolonId>(j["members"], path + ".members",
                                  [](const json& e, const std::string& p) { return HolonId{as_u64(e, p)}; });
  if (j.contains("representative"))
    h.representative = HolonId{as_u64(j["representative"], path + ".representative")};
  if (j.contains("name")) h.name = as_string(j["name"], path + ".name");
  return h;
}

ResponseActivity parse_activity(const json& j, const std::string& path) {
  check_keys(j, path, {"id", "trigger_topics", "required_roles", "required_data", "duration"});
  ResponseActivity a;
  a.id = as_string(require(j, path, "id"), path + ".id");
  for (auto& t : strings(require(j, path, "trigger_topics"), path + ".trigger_topics")) a.trigger_topics.insert(t);
  a.required_roles = array_of<RoleId>(require(j, path, "required_roles"), path + ".required_roles",
                                      [](const json& e, const std::string& p) { return RoleId{as_u64(e, p)}; });
  std::sort(a.required_roles.begin(), a.required_roles.end());
  if (j.contains("required_data"))
    for (auto& t : strings(j["required_data"], path + ".required_data")) a.required_data.insert(t);
  a.duration = as_tick(require(j, path, "duration"), path + ".duration");
  return a;
}

ArrivalProcess parse_process(const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path + ": expected an object");
  const std::string type = as_string(require(j, path, "type"), path + ".type");
  if (type == "poisson") {
    check_keys(j, path, {"type", "rate"});
    return Poisson{as_real(require(j, path, "rate"), path + ".rate")};
  }
  if (type == "deterministic") {
    check_keys(j, path, {"type", "period", "offset"});
    Deterministic d;
    d.period = as_tick(require(j, path, "period"), path + ".period");
    if (j.contains("offset")) d.offset = as_tick(j["offset"], path + ".offset");
    return d;
  }
  if (type == "trace") {
    check_keys(j, path, {"type", "times"});
    return TraceTimes{array_of<Tick>(require(j, path, "times"), path + ".times",
                                     [](const json& e, const std::string& p) { return as_tick(e, p); })};
  }
  invalid(path + ".type: expected 'poisson', 'deterministic' or 'trace'");
}

SourceSpec parse_source(const json& j, const std::string& path) {
  check_keys(j, path, {"topic", "soc", "process"});
  SourceSpec s;
  s.topic = as_string(require(j, path, "topic"), path + ".topic");
  s.soc = HolonId{as_u64(require(j, path, "soc"), path + ".soc")};
  s.process = parse_process(require(j, path, "process"), path + ".process");
  return s;
}

EvolutionPolicy parse_policy(const json& j, const std::string& path) {
  check_keys(j, path,
             {"permanentify_threshold", "prune_failure_threshold", "prune_window", "strength_increment",
              "fault_injection"});
  EvolutionPolicy p;
  if (j.contains("permanentify_threshold"))
    p.permanentify_threshold = as_u64(j["permanentify_threshold"], path + ".permanentify_threshold");
  if (j.contains("prune_failure_threshold"))
    p.prune_failure_threshold = as_u64(j["prune_failure_threshold"], path + ".prune_failure_threshold");
  if (j.contains("prune_window")) p.prune_window = as_tick(j["prune_window"], path + ".prune_window");
  if (j.contains("strength_increment"))
    p.strength_increment = as_real(j["strength_increment"], path + ".strength_increment");
  if (j.contains("fault_injection")) {
    p.fault_injection = array_of<FaultWindow>(j["fault_injection"], path + ".fault_injection",
                                              [](const json& e, const std::string& fp) {
                                                check_keys(e, fp, {"activity", "from", "to"});
                                                return FaultWindow{as_string(require(e, fp, "activity"), fp + ".activity"),
                                                                   as_tick(require(e, fp, "from"), fp + ".from"),
                                                                   as_tick(require(e, fp, "to"), fp + ".to")};
                                              });
  }
  return p;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

bool valid_token(std::string_view s) {
  return !s.empty() && std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

void check_topic(const std::string& topic, const std::string& where) {
  if (!valid_token(topic)) invalid(where + ": topic '" + topic + "' must be a non-empty token without whitespace");
}

}  // namespace

ActivityTable Scenario::activity_table() const {
  std::set<std::string> extra;
  for (const SourceSpec& s : environment.sources) extra.insert(s.topic);
  for (const HolonSpec& h : holarchy.holons) extra.insert(h.topics.begin(), h.topics.end());
  return ActivityTable(activities, std::move(extra));
}

void validate_scenario(const Scenario& s) {
  Holarchy h;
  try {
    h = build_holarchy(s.holarchy);
  } catch (const HolarchyError& e) {
    invalid(std::string("holarchy: ") + to_string(e.code()) + ": " + e.what());
  }

  for (const HolonSpec& hs : s.holarchy.holons) {
    for (const std::string& t : hs.topics) {
      std::ostringstream os;
      os << "holon " << hs.id;
      check_topic(t, os.str());
    }
  }

  std::set<std::string> ids;
  for (const ResponseActivity& a : s.activities) {
    const std::string where = "activity '" + a.id + "'";
    if (!valid_token(a.id)) invalid(where + ": id must be a non-empty token");
    if (!ids.insert(a.id).second) invalid(where + ": duplicate activity id");
    if (a.trigger_topics.empty()) invalid(where + ": no trigger topics");
    for (const auto& t : a.trigger_topics) check_topic(t, where);
    for (const auto& t : a.required_data) check_topic(t, where);
    if (a.required_roles.empty()) invalid(where + ": no required roles");
    for (RoleId r : a.required_roles) {
      if (!h.roles().contains(r)) {
        std::ostringstream os;
        os << where << ": role " << r << " not declared";
        invalid(os.str());
      }
    }
    if (a.duration < 1) invalid(where + ": duration must be at least 1 tick");
  }

  for (std::size_t i = 0; i < s.environment.sources.size(); ++i) {
    const SourceSpec& src = s.environment.sources[i];
    const std::string where = "source " + std::to_string(i);
    check_topic(src.topic, where);
    const Holon* soc = h.find(src.soc);
    if (soc == nullptr || !soc->is_composite()) {
      std::ostringstream os;
      os << where << ": holon " << src.soc << " is not a SoC";
      invalid(os.str());
    }
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, Poisson>) {
            if (!(p.rate > 0.0)) invalid(where + ": rate must be positive");
          } else if constexpr (std::is_same_v<P, Deterministic>) {
            if (p.period < 1) invalid(where + ": period must be at least 1");
            if (p.offset < 0) invalid(where + ": offset must be non-negative");
          } else {
            if (!std::is_sorted(p.times.begin(), p.times.end())) invalid(where + ": trace times must be ascending");
            if (!p.times.empty() && p.times.front() < 0) invalid(where + ": trace times must be non-negative");
          }
        },
        src.process);
  }

  const EvolutionPolicy& p = s.policy;
  if (p.permanentify_threshold < 1) invalid("policy: permanentify_threshold must be at least 1");
  if (p.prune_failure_threshold < 1) invalid("policy: prune_failure_threshold must be at least 1");
  if (p.prune_window < 1) invalid("policy: prune_window must be at least 1");
  if (!(p.strength_increment > 0.0)) invalid("policy: strength_increment must be positive");
  for (const FaultWindow& w : p.fault_injection) {
    if (!ids.contains(w.activity)) invalid("policy: fault injection names unknown activity '" + w.activity + "'");
    if (w.to < w.from) invalid("policy: fault window ends before it starts");
  }
  if (s.horizon < 0) invalid("horizon must be non-negative");
}

Scenario load_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_and_column(text, e.byte);
    std::ostringstream os;
    os << "parse error at line " << line << ", column " << col << ": " << e.what();
    throw ScenarioError(ScenarioErrc::parse, os.str());
  }

  check_keys(j, "scenario",
             {"roles", "holarchy", "activities", "environment", "policy", "horizon", "seed", "retry_bound"});
  Scenario s;
  s.holarchy.roles = array_of<RoleSpec>(require(j, "scenario", "roles"), "roles", parse_role);
  const json& holarchy = require(j, "scenario", "holarchy");
  check_keys(holarchy, "holarchy", {"holons"});
  s.holarchy.holons = array_of<HolonSpec>(require(holarchy, "holarchy", "holons"), "holarchy.holons", parse_holon);
  s.activities = array_of<ResponseActivity>(require(j, "scenario", "activities"), "activities", parse_activity);
  const json& env = require(j, "scenario", "environment");
  check_keys(env, "environment", {"sources"});
  s.environment.sources = array_of<SourceSpec>(require(env, "environment", "sources"), "environment.sources", parse_source);
  if (j.contains("policy")) s.policy = parse_policy(j["policy"], "policy");
  s.horizon = as_tick(require(j, "scenario", "horizon"), "horizon");
  s.seed = as_u64(require(j, "scenario", "seed"), "seed");
  if (j.contains("retry_bound")) s.retry_bound = as_u64(j["retry_bound"], "retry_bound");

  validate_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(ScenarioErrc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  auto ids = [](const auto& v) {
    ordered_json arr = ordered_json::array();
    for (auto id : v) arr.push_back(id.value());
    return arr;
  };

  ordered_json j;
  ordered_json roles = ordered_json::array();
  for (const RoleSpec& r : s.holarchy.roles) {
    ordered_json role{{"id", r.id.value()}};
    if (!r.name.empty()) role["name"] = r.name;
    roles.push_back(std::move(role));
  }
  j["roles"] = std::move(roles);

  ordered_json holons = ordered_json::array();
  for (const HolonSpec& h : s.holarchy.holons) {
    ordered_json o{{"id", h.id.value()}, {"kind", h.kind == HolonKind::atomic ? "atomic" : "composite"}};
    if (!h.capabilities.empty()) o["capabilities"] = ids(h.capabilities);
    if (!h.topics.empty()) o["topics"] = h.topics;
    if (!h.members.empty()) o["members"] = ids(h.members);
    if (h.representative) o["representative"] = h.representative->value();
    if (!h.name.empty()) o["name"] = h.name;
    holons.push_back(std::move(o));
  }
  j["holarchy"] = ordered_json{{"holons", std::move(holons)}};

  ordered_json activities = ordered_json::array();
  for (const ResponseActivity& a : s.activities) {
    ordered_json o{{"id", a.id},
                   {"trigger_topics", a.trigger_topics},
                   {"required_roles", ids(a.required_roles)},
                   {"required_data", a.required_data},
                   {"duration", a.duration}};
    activities.push_back(std::move(o));
  }
  j["activities"] = std::move(activities);

  ordered_json sources = ordered_json::array();
  for (const SourceSpec& src : s.environment.sources) {
    ordered_json process = std::visit(
        [](const auto& p) -> ordered_json {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, Poisson>) {
            return {{"type", "poisson"}, {"rate", p.rate}};
          } else if constexpr (std::is_same_v<P, Deterministic>) {
            return {{"type", "deterministic"}, {"period", p.period}, {"offset", p.offset}};
          } else {
            return {{"type", "trace"}, {"times", p.times}};
          }
        },
        src.process);
    sources.push_back(ordered_json{{"topic", src.topic}, {"soc", src.soc.value()}, {"process", std::move(process)}});
  }
  j["environment"] = ordered_json{{"sources", std::move(sources)}};

  ordered_json faults = ordered_json::array();
  for (const FaultWindow& w : s.policy.fault_injection)
    faults.push_back(ordered_json{{"activity", w.activity}, {"from", w.from}, {"to", w.to}});
  j["policy"] = ordered_json{{"permanentify_threshold", s.policy.permanentify_threshold},
                             {"prune_failure_threshold", s.policy.prune_failure_threshold},
                             {"prune_window", s.policy.prune_window},
                             {"strength_increment", s.policy.strength_increment},
                             {"fault_injection", std::move(faults)}};
  j["horizon"] = s.horizon;
  j["seed"] = s.seed;
  j["retry_bound"] = s.retry_bound;
  return j.dump(2) + "\n";
}

}  // namespace fso
