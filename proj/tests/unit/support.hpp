#pragma once

#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "depmine/dep_graph.hpp"
#include "depmine/event_log.hpp"
#include "depmine/measures.hpp"
#include "depmine/relations.hpp"

namespace testsup {

struct TraceSpec {
  std::string events;  // space-separated task names
  std::int64_t count = 1;
};

// Log from readable trace strings, e.g. {{"s a e", 10}, {"s b e", 2}}.
inline depmine::EventLog make_log(std::initializer_list<TraceSpec> traces) {
  depmine::EventLog log;
  for (const TraceSpec& spec : traces) {
    std::vector<int> events;
    std::istringstream ss(spec.events);
    std::string token;
    while (ss >> token) events.push_back(log.alphabet.intern(token));
    log.add_trace(std::move(events), spec.count);
  }
  return log;
}

inline depmine::EventLog endpointed(std::initializer_list<TraceSpec> traces) {
  return depmine::ensure_unique_endpoints(make_log(traces));
}

// Graph from task names and "from to" arc strings; start/end are the first
// and last task names unless given explicitly.
inline depmine::DependencyGraph make_graph(std::vector<std::string> tasks,
                                           std::initializer_list<std::string> arcs,
                                           int start = 0, int end = -1) {
  if (end < 0) end = static_cast<int>(tasks.size()) - 1;
  depmine::DependencyGraph g(tasks, start, end);
  for (const std::string& arc : arcs) {
    std::istringstream ss(arc);
    std::string from, to;
    ss >> from >> to;
    int fi = -1, ti = -1;
    for (int i = 0; i < static_cast<int>(tasks.size()); ++i) {
      if (tasks[static_cast<std::size_t>(i)] == from) fi = i;
      if (tasks[static_cast<std::size_t>(i)] == to) ti = i;
    }
    g.add_arc(fi, ti);
  }
  return g;
}

inline int task_id(const depmine::EventLog& log, const std::string& name) {
  auto id = log.alphabet.find(name);
  return id ? *id : -1;
}

inline depmine::DependencyMeasures measures_of(const depmine::EventLog& log) {
  return depmine::dependency_measures(depmine::count_relations(log));
}

}  // namespace testsup
