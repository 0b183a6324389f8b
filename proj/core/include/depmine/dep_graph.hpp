#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "depmine/grid.hpp"
#include "depmine/measures.hpp"

namespace depmine {

// Directed graph of causal relations over named tasks.  Arcs never enter the
// start task or leave the end task; add_arc enforces this.  Start→end path
// coverage is NOT a type invariant (see validate_paths) so imperfect graphs
// can still be evaluated.
class DependencyGraph {
 public:
  DependencyGraph() = default;
  DependencyGraph(std::vector<std::string> tasks, int start, int end);

  int task_count() const { return static_cast<int>(tasks_.size()); }
  const std::vector<std::string>& tasks() const { return tasks_; }
  int start() const { return start_; }
  int end() const { return end_; }

  // Arcs are kept sorted lexicographically and deduplicated.
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  void add_arc(int from, int to);
  bool has_arc(int from, int to) const;
  std::int64_t arc_count() const { return static_cast<std::int64_t>(arcs_.size()); }

  // inp/out task sets per target/source, each sorted.
  std::vector<std::vector<int>> predecessors() const;
  std::vector<std::vector<int>> successors() const;

  friend bool operator==(const DependencyGraph&, const DependencyGraph&) = default;

 private:
  std::vector<std::string> tasks_;
  std::vector<std::pair<int, int>> arcs_;
  int start_ = 0;
  int end_ = 0;
};

// Start→end path coverage check (two BFS sweeps).
struct PathReport {
  bool ok = true;
  std::vector<int> unreachable_from_start;  // tasks with no start→task path
  std::vector<int> cannot_reach_end;        // tasks with no task→end path
};
PathReport validate_paths(const DependencyGraph& g);

// Transitive closure over arcs; reach(x,y)=1 iff a path of length ≥ 1 exists.
// Diagonal entries are set only for tasks on a cycle.
struct Reachability {
  int n = 0;
  Grid<std::uint8_t> reach;
};
Reachability reachability(const DependencyGraph& g);

// Threshold miner with the classic connect-everything repair.  Arcs need a
// strictly positive measure on top of the threshold; the repair may still
// leave loop-only islands disconnected (validate_paths can fail).
DependencyGraph baseline_threshold_miner(const DependencyMeasures& meas,
                                         const std::vector<std::string>& tasks, int start, int end,
                                         double dep_thresh, double sloop_thresh,
                                         double loop_thresh);

std::string to_dot(const DependencyGraph& g);
std::string graph_to_json(const DependencyGraph& g);
DependencyGraph graph_from_json(std::string_view text);

}  // namespace depmine
