#pragma once

#include <string>
#include <vector>

#include "depmine/event_log.hpp"
#include "depmine/grid.hpp"
#include "depmine/relations.hpp"

namespace depmine {

// Smoothed dependency scores derived from RelationCounts: arc(i,j) in (−1,1)
// scores a causal arc i→j (antisymmetric), self_loop[i] in [0,1) scores a
// self-loop, two_loop(i,j) in [0,1) scores a two-cycle (symmetric).
// Diagonals of arc/two_loop are unused and left at 0.
struct DependencyMeasures {
  int n = 0;
  Grid<double> arc;
  std::vector<double> self_loop;
  Grid<double> two_loop;
};

DependencyMeasures dependency_measures(const RelationCounts& counts);

// Debug dump for the measures-dump subcommand.
std::string measures_to_json(const DependencyMeasures& meas, const Alphabet& alphabet);

}  // namespace depmine
