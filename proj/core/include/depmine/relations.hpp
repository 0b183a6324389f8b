#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depmine/event_log.hpp"
#include "depmine/grid.hpp"

namespace depmine {

// Count statistics of a log: task frequencies, direct-succession counts, and
// length-two repetition counts (pattern a,b,a; overlapping positions all
// counted).  All counts are weighted by trace multiplicity.
struct RelationCounts {
  int n = 0;
  std::vector<std::int64_t> freq;
  Grid<std::int64_t> direct;
  Grid<std::int64_t> repeat2;
};

RelationCounts count_relations(const EventLog& log);

// fl(x,y) = 1 iff some trace contains x strictly before an occurrence of y.
struct EventuallyFollows {
  int n = 0;
  Grid<std::uint8_t> fl;
};

EventuallyFollows eventually_follows(const EventLog& log);

// Debug dump for the relations-dump subcommand.
std::string relations_to_json(const RelationCounts& counts, const Alphabet& alphabet);

}  // namespace depmine
