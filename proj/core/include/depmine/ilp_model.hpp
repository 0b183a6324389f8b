#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "depmine/measures.hpp"

namespace depmine {

// Discovery parameters.  Thresholds are minimum dependency scores; the caps
// bound graph complexity; big_m = 0 means "choose automatically" (a value
// strictly dominating any attainable positive objective mass).
struct DiscoveryConfig {
  double dep_thresh = 0.0;
  double sloop_thresh = 0.0;
  double loop_thresh = 0.0;
  double max_arcs_ratio = 2.0;
  int max_outputs = 1000;
  int max_inputs = 1000;
  double alpha = 1.0;
  double beta = 1.0;
  double big_m = 0.0;
  double sparsity_epsilon = 1e-7;

  void validate() const;  // throws ConfigError
};

// Variable families of the discovery program.  Wire tags (LP files) follow
// the established formulation: E, x, y, R, forced, forcel, u, q, forcesl.
enum class VarKind : std::uint8_t {
  Arc,             // E(i,j): arc i->j present
  SpanIn,          // x(i,j): arc used by the loop-free covering-in subgraph
  SpanOut,         // y(i,j): arc used by the loop-free covering-out subgraph
  TwoCycle,        // R(i,j): both arcs of a two-cycle present
  ForcedArc,       // forced(i,j): arc admitted below dep_thresh
  ForcedTwoLoop,   // forcel(i,j): two-cycle admitted below loop_thresh (i<j)
  RankIn,          // u(i): acyclicity rank for the in-subgraph
  RankOut,         // q(i): acyclicity rank for the out-subgraph
  ForcedSelfLoop,  // forcesl(i): self-loop admitted below sloop_thresh
};

enum class VarDomain : std::uint8_t { Binary, Integer };

struct VarInfo {
  VarKind kind;
  int i = 0;
  int j = 0;  // unused for the vector families
  VarDomain domain = VarDomain::Binary;
  double lower = 0.0;
  double upper = 1.0;
};

enum class RowRelation : std::uint8_t { LessEqual, Equal, GreaterEqual };

struct LinearRow {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient), index-sorted
  RowRelation rel = RowRelation::LessEqual;
  double rhs = 0.0;
};

class IlpModel {
 public:
  int task_count() const { return n_; }
  int start() const { return start_; }
  int end() const { return end_; }
  double big_m() const { return big_m_; }

  int var_count() const { return static_cast<int>(vars_.size()); }
  const std::vector<VarInfo>& variables() const { return vars_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<LinearRow>& rows() const { return rows_; }

  int var_index(VarKind kind, int i, int j = 0) const;
  std::string var_name(int index) const;

  double objective_value(std::span<const double> assignment) const;
  // Largest row violation (0 when feasible) for tolerance checks.
  double max_row_violation(std::span<const double> assignment) const;

 private:
  friend IlpModel build_model(const DependencyMeasures& meas, int start, int end,
                              const DiscoveryConfig& cfg);
  int n_ = 0;
  int start_ = 0;
  int end_ = 0;
  double big_m_ = 0.0;
  std::vector<VarInfo> vars_;
  std::vector<double> objective_;
  std::vector<LinearRow> rows_;
};

IlpModel build_model(const DependencyMeasures& meas, int start, int end,
                     const DiscoveryConfig& cfg);

// CPLEX-style LP text; byte-identical for identical models.
std::string export_lp(const IlpModel& model);

// Debug dump of variables, bounds, objective, and rows.
std::string model_to_json(const IlpModel& model);

enum class SolveStatus : std::uint8_t { Optimal, Infeasible, LimitReached };

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  double wall_seconds = 0.0;
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> assignment;  // one value per model variable when present
  double objective_value = 0.0;
  SolveStats stats;
};

class DependencyGraph;
DependencyGraph extract_graph(const IlpModel& model, const Solution& sol,
                              const std::vector<std::string>& task_names);

}  // namespace depmine
