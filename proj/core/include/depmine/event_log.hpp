#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace depmine {

// Task name interning: stable integer ids in first-seen order.
class Alphabet {
 public:
  int intern(std::string_view name);
  std::optional<int> find(std::string_view name) const;
  const std::string& name(int id) const;
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

// One distinct trace variant with its multiplicity in the log.
struct Trace {
  std::vector<int> events;
  std::int64_t count = 1;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// A log is a multiset of traces over an interned alphabet.  `start`/`end`
// are the ids of the endpoint tasks once ensure_unique_endpoints has run
// (-1 beforehand).
struct EventLog {
  Alphabet alphabet;
  std::vector<Trace> traces;  // distinct variants, first-seen order
  int start = -1;
  int end = -1;
  bool artificial_start = false;
  bool artificial_end = false;

  // Adds a trace, merging into an existing variant when the event
  // sequence matches.
  void add_trace(std::vector<int> events, std::int64_t count = 1);

  std::int64_t total_traces() const;  // sum of counts
  std::int64_t total_events() const;  // sum of count * length

 private:
  std::map<std::vector<int>, std::size_t> variant_index_;
};

// Returns a log whose traces all begin with one shared start task and end
// with one shared end task.  If every trace already starts (ends) with the
// same task and that task appears nowhere else, it is kept; otherwise an
// artificial task is appended to the alphabet and prepended (appended) to
// every trace.  Rejects empty logs and empty traces.
EventLog ensure_unique_endpoints(const EventLog& log, std::string_view artificial_start = "__start__",
                                 std::string_view artificial_end = "__end__");

// Canonical JSON round-trip for logs.
std::string log_to_json(const EventLog& log);
EventLog log_from_json(std::string_view text);

}  // namespace depmine
