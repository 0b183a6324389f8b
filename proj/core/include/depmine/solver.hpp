#pragma once

#include <cstdint>

#include "depmine/ilp_model.hpp"

namespace depmine {

struct SolveLimits {
  double time_limit = 0.0;      // wall seconds; 0 = unlimited
  std::int64_t node_limit = 0;  // explored nodes; 0 = unlimited
  double gap_tolerance = 0.0;   // relative optimality gap; 0 = prove optimality

  void validate() const;  // throws ConfigError
};

// Exact branch-and-bound on the discovery program.  Deterministic: best-bound
// node selection (ties: oldest node), most-fractional branching (ties: lowest
// variable index), and the 1-branch explored first.  When the environment
// variable DEPMINE_EXTERNAL_SOLVER names a solver binary it is tried first on
// the exported LP file; its solution is re-verified internally and the
// internal search runs anyway if anything about it fails to check out.
Solution solve(const IlpModel& model, const SolveLimits& limits = {});

// Exhaustive oracle: enumerates every admissible arc matrix and keeps the
// best-scoring feasible assignment (ties: fewer arcs, then lexicographically
// smallest arc matrix).  Refuses alphabets larger than cap.
Solution brute_force_solve(const DependencyMeasures& meas, int start, int end,
                           const DiscoveryConfig& cfg, int cap = 5);

}  // namespace depmine
