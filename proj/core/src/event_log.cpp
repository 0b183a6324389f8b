#include "depmine/event_log.hpp"

#include <json.hpp>

#include "depmine/errors.hpp"

namespace depmine {

int Alphabet::intern(std::string_view name) {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<int> Alphabet::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Alphabet::name(int id) const {
  if (id < 0 || id >= size()) throw ModelError("task id out of range: " + std::to_string(id));
  return names_[static_cast<std::size_t>(id)];
}

void EventLog::add_trace(std::vector<int> events, std::int64_t count) {
  if (count <= 0) throw SchemaError("trace count must be positive");
  auto it = variant_index_.find(events);
  if (it != variant_index_.end()) {
    traces[it->second].count += count;
    return;
  }
  variant_index_.emplace(events, traces.size());
  traces.push_back(Trace{std::move(events), count});
}

std::int64_t EventLog::total_traces() const {
  std::int64_t sum = 0;
  for (const Trace& t : traces) sum += t.count;
  return sum;
}

std::int64_t EventLog::total_events() const {
  std::int64_t sum = 0;
  for (const Trace& t : traces) sum += t.count * static_cast<std::int64_t>(t.events.size());
  return sum;
}

namespace {

// A task is a usable endpoint only when every trace has it in the boundary
// position and it never occurs anywhere else.
bool qualifies_as_start(const EventLog& log, int task) {
  for (const Trace& t : log.traces) {
    if (t.events.front() != task) return false;
    for (std::size_t k = 1; k < t.events.size(); ++k)
      if (t.events[k] == task) return false;
  }
  return true;
}

bool qualifies_as_end(const EventLog& log, int task) {
  for (const Trace& t : log.traces) {
    if (t.events.back() != task) return false;
    for (std::size_t k = 0; k + 1 < t.events.size(); ++k)
      if (t.events[k] == task) return false;
  }
  return true;
}

}  // namespace

EventLog ensure_unique_endpoints(const EventLog& log, std::string_view artificial_start,
                                 std::string_view artificial_end) {
  if (log.traces.empty()) throw SchemaError("log has no traces");
  for (const Trace& t : log.traces) {
    if (t.events.empty()) throw SchemaError("log contains an empty trace");
    for (int e : t.events)
      if (e < 0 || e >= log.alphabet.size()) throw SchemaError("trace event id out of range");
  }

  int start_candidate = log.traces.front().events.front();
  if (!qualifies_as_start(log, start_candidate)) start_candidate = -1;
  int end_candidate = log.traces.front().events.back();
  if (!qualifies_as_end(log, end_candidate)) end_candidate = -1;
  if (start_candidate >= 0 && start_candidate == end_candidate) {
    // A single shared task cannot serve as both endpoints.
    start_candidate = -1;
    end_candidate = -1;
  }

  EventLog out;
  out.alphabet = log.alphabet;
  int start = start_candidate >= 0 ? start_candidate : out.alphabet.intern(artificial_start);
  int end = end_candidate >= 0 ? end_candidate : out.alphabet.intern(artificial_end);
  if (start == end) throw SchemaError("artificial start and end names collide");

  for (const Trace& t : log.traces) {
    std::vector<int> events;
    events.reserve(t.events.size() + 2);
    if (start_candidate < 0) events.push_back(start);
    events.insert(events.end(), t.events.begin(), t.events.end());
    if (end_candidate < 0) events.push_back(end);
    out.add_trace(std::move(events), t.count);
  }
  out.start = start;
  out.end = end;
  out.artificial_start = start_candidate < 0;
  out.artificial_end = end_candidate < 0;
  return out;
}

std::string log_to_json(const EventLog& log) {
  nlohmann::ordered_json j;
  j["alphabet"] = log.alphabet.names();
  j["traces"] = nlohmann::ordered_json::array();
  for (const Trace& t : log.traces) {
    nlohmann::ordered_json jt;
    jt["events"] = t.events;
    jt["count"] = t.count;
    j["traces"].push_back(std::move(jt));
  }
  j["start"] = log.start;
  j["end"] = log.end;
  return j.dump(2) + "\n";
}

EventLog log_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid log JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("alphabet") || !j.contains("traces"))
    throw SchemaError("log JSON must be an object with 'alphabet' and 'traces'");

  EventLog log;
  try {
    for (const auto& name : j.at("alphabet")) log.alphabet.intern(name.get<std::string>());
    for (const auto& jt : j.at("traces")) {
      std::vector<int> events = jt.at("events").get<std::vector<int>>();
      std::int64_t count = jt.value("count", std::int64_t{1});
      if (count <= 0) throw SchemaError("trace count must be positive");
      for (int e : events)
        if (e < 0 || e >= log.alphabet.size()) throw SchemaError("trace event id out of range");
      log.add_trace(std::move(events), count);
    }
    log.start = j.value("start", -1);
    log.end = j.value("end", -1);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("log JSON field error: ") + e.what());
  }
  int n = log.alphabet.size();
  if (log.start >= n || log.end >= n) throw SchemaError("start/end id out of range");
  if (log.start >= 0) log.artificial_start = log.alphabet.name(log.start) == "__start__";
  if (log.end >= 0) log.artificial_end = log.alphabet.name(log.end) == "__end__";
  return log;
}

}  // namespace depmine
