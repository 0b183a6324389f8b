#pragma once

#include <cstdint>
#include <string>

#include "depmine/dep_graph.hpp"
#include "depmine/event_log.hpp"

namespace depmine {

// Replay counters and the fitness value derived from them.
struct FitnessReport {
  std::int64_t afe = 0;     // events with neither violation
  std::int64_t aewpr = 0;   // events executed without pre-requisite
  std::int64_t aewpo = 0;   // events executed without post-requisite
  std::int64_t ntewpr = 0;  // traces containing a pre-requisite violation
  std::int64_t ntewpo = 0;  // traces containing a post-requisite violation
  std::int64_t nel = 0;     // total events
  std::int64_t ntl = 0;     // total traces
  double penalty = 0.0;
  double fim = 0.0;
};

// How fitting events are counted: per-event compatibility (default), or with
// trace-persistent violation flags (the literal replay pseudo-code, where
// everything after a trace's first violation stops counting as fitting).
enum class FitnessMode { EventLocal, TraceFlags };

FitnessReport fitness(const EventLog& log, const DependencyGraph& g,
                      FitnessMode mode = FitnessMode::EventLocal);

struct PrecisionReport {
  std::int64_t matched = 0;   // eventually-follows pairs shared by log and graph
  std::int64_t possible = 0;  // reachable pairs in the graph
  double prm = 0.0;
};

PrecisionReport precision(const EventLog& log, const DependencyGraph& g);

double f_score(double fim, double prm);

struct QualityReport {
  double fim = 0.0;
  double prm = 0.0;
  double fscore = 0.0;
  std::int64_t an = 0;  // arc count, self-loops included
  FitnessReport fitness_detail;
  PrecisionReport precision_detail;
};

QualityReport quality(const EventLog& log, const DependencyGraph& g,
                      FitnessMode mode = FitnessMode::EventLocal);

std::string quality_to_json(const QualityReport& report);

}  // namespace depmine
