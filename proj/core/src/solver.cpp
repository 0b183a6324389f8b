#include "depmine/solver.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "depmine/errors.hpp"
#include "depmine/grid.hpp"
#include "depmine/simplex.hpp"

namespace depmine {

namespace {

constexpr double kIntTol = 1e-6;
constexpr double kRowTol = 1e-6;
constexpr double kObjTol = 1e-9;
constexpr double kCutTol = 1e-6;
constexpr int kRootCutRounds = 50;
constexpr int kLazyCutCap = 400;

// Builds a full assignment from an arc matrix: the two-cycle block is pinned
// by the arcs, each threshold row sets its relaxation variable minimally, and
// the covering subgraphs (x, u) / (y, q) come from breadth-first trees rooted
// at the start and end tasks.  Returns an empty vector when some task misses
// a start-to-end path, in which case no feasible completion exists.
class Repairer {
 public:
  explicit Repairer(const IlpModel& model) : model_(model), n_(model.task_count()) {
    for (const LinearRow& row : model.rows())
      for (auto [var, coeff] : row.terms) {
        VarKind kind = model.variables()[static_cast<std::size_t>(var)].kind;
        if (kind == VarKind::ForcedArc || kind == VarKind::ForcedTwoLoop ||
            kind == VarKind::ForcedSelfLoop) {
          relax_rows_.push_back({&row, var});
          break;
        }
      }
  }

  std::vector<double> build(const Grid<std::uint8_t>& arcs) const {
    int start = model_.start();
    int end = model_.end();
    std::vector<int> parent(static_cast<std::size_t>(n_), -1);
    std::vector<int> depth(static_cast<std::size_t>(n_), -1);
    if (!bfs(arcs, start, false, parent, depth)) return {};
    std::vector<int> succ(static_cast<std::size_t>(n_), -1);
    std::vector<int> rdepth(static_cast<std::size_t>(n_), -1);
    if (!bfs(arcs, end, true, succ, rdepth)) return {};

    std::vector<double> assign(static_cast<std::size_t>(model_.var_count()), 0.0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (!arcs(i, j)) continue;
        assign[static_cast<std::size_t>(model_.var_index(VarKind::Arc, i, j))] = 1.0;
        if (i != j && arcs(j, i))
          assign[static_cast<std::size_t>(model_.var_index(VarKind::TwoCycle, i, j))] = 1.0;
      }
    for (int t = 0; t < n_; ++t) {
      assign[static_cast<std::size_t>(model_.var_index(VarKind::RankIn, t))] =
          static_cast<double>(depth[static_cast<std::size_t>(t)]);
      assign[static_cast<std::size_t>(model_.var_index(VarKind::RankOut, t))] =
          static_cast<double>(n_ - 1 - rdepth[static_cast<std::size_t>(t)]);
      if (t != start)
        assign[static_cast<std::size_t>(
            model_.var_index(VarKind::SpanIn, parent[static_cast<std::size_t>(t)], t))] = 1.0;
      if (t != end)
        assign[static_cast<std::size_t>(
            model_.var_index(VarKind::SpanOut, t, succ[static_cast<std::size_t>(t)]))] = 1.0;
    }
    for (const RelaxRow& rr : relax_rows_) {
      double lhs = 0.0;
      for (auto [var, coeff] : rr.row->terms) lhs += coeff * assign[static_cast<std::size_t>(var)];
      if (lhs > rr.row->rhs + 1e-9) assign[static_cast<std::size_t>(rr.var)] = 1.0;
    }
    return assign;
  }

 private:
  bool bfs(const Grid<std::uint8_t>& arcs, int root, bool reverse, std::vector<int>& parent,
           std::vector<int>& depth) const {
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(n_));
    queue.push_back(root);
    depth[static_cast<std::size_t>(root)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int v = 0; v < n_; ++v) {
        if (v == u || depth[static_cast<std::size_t>(v)] >= 0) continue;
        if (!(reverse ? arcs(v, u) : arcs(u, v))) continue;
        depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
        parent[static_cast<std::size_t>(v)] = u;
        queue.push_back(v);
      }
    }
    return static_cast<int>(queue.size()) == n_;
  }

  struct RelaxRow {
    const LinearRow* row;
    int var;
  };
  const IlpModel& model_;
  int n_;
  std::vector<RelaxRow> relax_rows_;
};

// Edmonds-Karp max-flow over the arc values, stopping once `need` units are
// routed.  When the flow falls short, `side` receives the source side of a
// minimum cut (the residual-reachable set).
double bounded_max_flow(Grid<double> residual, int s, int t, double need,
                        std::vector<std::uint8_t>& side) {
  const int n = residual.rows();
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  double flow = 0.0;
  for (int aug = 0; flow < need - kCutTol; ++aug) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[static_cast<std::size_t>(s)] = s;
    queue.assign(1, s);
    for (std::size_t head = 0;
         head < queue.size() && parent[static_cast<std::size_t>(t)] < 0; ++head) {
      int u = queue[head];
      for (int v = 0; v < n; ++v)
        if (parent[static_cast<std::size_t>(v)] < 0 && residual(u, v) > kCutTol) {
          parent[static_cast<std::size_t>(v)] = u;
          queue.push_back(v);
        }
    }
    if (parent[static_cast<std::size_t>(t)] < 0) break;
    if (aug >= 4 * n) return need;  // degenerate trickle of tiny augmentations
    double push = need - flow;
    for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)])
      push = std::min(push, residual(parent[static_cast<std::size_t>(v)], v));
    for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
      residual(parent[static_cast<std::size_t>(v)], v) -= push;
      residual(v, parent[static_cast<std::size_t>(v)]) += push;
    }
    flow += push;
  }
  side.assign(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    if (parent[static_cast<std::size_t>(v)] >= 0) side[static_cast<std::size_t>(v)] = 1;
  return flow;
}

// Connectivity cuts.  Integer-feasible graphs embed a covering out-tree from
// the start and in-tree to the end, so the arcs leaving any vertex set that
// holds the start but not some task t (or holds t but not the end) must carry
// total weight >= 1.  The covering-subgraph rows guarantee that for integer
// points, but their relaxation lets fractional order variables fake the
// connections, which is exactly the gap these rows close.  Violated sets are
// found by max-flow/min-cut on the relaxation's arc values.
class ConnectivityCuts {
 public:
  ConnectivityCuts(const IlpModel& model, LpInstance& lp)
      : model_(model), lp_(lp), n_(model.task_count()) {}

  int total() const { return total_; }

  // Separates the point `values`; returns the number of rows added to the LP.
  int separate(const std::vector<double>& values) {
    Grid<double> cap(n_, n_, 0.0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (i == j) continue;
        double v = values[static_cast<std::size_t>(model_.var_index(VarKind::Arc, i, j))];
        if (v > kCutTol) cap(i, j) = v;
      }
    int added = 0;
    std::vector<std::uint8_t> side;
    for (int t = 0; t < n_; ++t) {
      if (t != model_.start() &&
          bounded_max_flow(cap, model_.start(), t, 1.0, side) < 1.0 - kCutTol)
        added += add_cut(side);
      if (t != model_.end() &&
          bounded_max_flow(cap, t, model_.end(), 1.0, side) < 1.0 - kCutTol)
        added += add_cut(side);
    }
    total_ += added;
    return added;
  }

 private:
  int add_cut(const std::vector<std::uint8_t>& side) {
    if (!seen_.insert(side).second) return 0;
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n_; ++i) {
      if (!side[static_cast<std::size_t>(i)]) continue;
      for (int j = 0; j < n_; ++j)
        if (j != i && !side[static_cast<std::size_t>(j)])
          terms.emplace_back(model_.var_index(VarKind::Arc, i, j), 1.0);
    }
    if (terms.empty()) return 0;
    lp_.add_row(terms, RowRelation::GreaterEqual, 1.0);
    return 1;
  }

  const IlpModel& model_;
  LpInstance& lp_;
  int n_;
  int total_ = 0;
  std::set<std::vector<std::uint8_t>> seen_;
};

// Primal rounding heuristic: keep the arcs the relaxation is confident about,
// patch connectivity by greedily adding the highest-valued frontier arcs, and
// trim the lowest-valued removable arcs until the budget row is respected.
// The repairer turns the arc matrix into a full assignment.
class Rounder {
 public:
  explicit Rounder(const IlpModel& model) : model_(model), n_(model.task_count()) {
    for (const LinearRow& row : model.rows())
      if (row.name == "arc_budget") {
        budget_ = row.rhs;
        break;
      }
  }

  Grid<std::uint8_t> build(const std::vector<double>& values) const {
    Grid<double> val(n_, n_, 0.0);
    Grid<std::uint8_t> arcs(n_, n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        double v = values[static_cast<std::size_t>(model_.var_index(VarKind::Arc, i, j))];
        val(i, j) = v;
        arcs(i, j) = v > 0.5 ? 1 : 0;
      }
    patch(arcs, val, false);
    patch(arcs, val, true);
    trim(arcs, val);
    return arcs;
  }

 private:
  std::vector<std::uint8_t> reach_set(const Grid<std::uint8_t>& arcs, bool reverse) const {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> queue{reverse ? model_.end() : model_.start()};
    seen[static_cast<std::size_t>(queue.front())] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int v = 0; v < n_; ++v) {
        if (v == u || seen[static_cast<std::size_t>(v)]) continue;
        if (!(reverse ? arcs(v, u) : arcs(u, v))) continue;
        seen[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
    return seen;
  }

  static bool covers_all(const std::vector<std::uint8_t>& seen) {
    return std::all_of(seen.begin(), seen.end(), [](std::uint8_t s) { return s != 0; });
  }

  // Connects every task to the start (or, reversed, to the end) by repeatedly
  // adding the highest-valued arc crossing the reachability frontier.
  void patch(Grid<std::uint8_t>& arcs, const Grid<double>& val, bool reverse) const {
    while (true) {
      std::vector<std::uint8_t> seen = reach_set(arcs, reverse);
      int bi = -1;
      int bj = -1;
      double best = -1.0;
      for (int i = 0; i < n_; ++i) {
        if (i == model_.end()) continue;  // arcs out of the end are forbidden
        for (int j = 0; j < n_; ++j) {
          if (j == i || j == model_.start()) continue;  // likewise arcs into the start
          bool crosses = reverse ? (!seen[static_cast<std::size_t>(i)] &&
                                    seen[static_cast<std::size_t>(j)])
                                 : (seen[static_cast<std::size_t>(i)] &&
                                    !seen[static_cast<std::size_t>(j)]);
          if (crosses && val(i, j) > best) {
            best = val(i, j);
            bi = i;
            bj = j;
          }
        }
      }
      if (bi < 0) return;  // frontier empty: everything is connected
      arcs(bi, bj) = 1;
    }
  }

  // Drops arcs cheapest-first while the count exceeds the budget row.  An arc
  // that stops being removable never becomes removable again as the graph
  // only shrinks, so one ascending pass suffices.
  void trim(Grid<std::uint8_t>& arcs, const Grid<double>& val) const {
    int count = 0;
    std::vector<std::tuple<double, int, int>> order;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (arcs(i, j)) {
          ++count;
          order.emplace_back(val(i, j), i, j);
        }
    std::sort(order.begin(), order.end());
    for (const auto& [v, i, j] : order) {
      if (static_cast<double>(count) <= budget_ + 1e-9) break;
      arcs(i, j) = 0;
      if (covers_all(reach_set(arcs, false)) && covers_all(reach_set(arcs, true)))
        --count;
      else
        arcs(i, j) = 1;
    }
  }

  const IlpModel& model_;
  int n_;
  double budget_ = std::numeric_limits<double>::infinity();
};

bool within_bounds(const IlpModel& model, const std::vector<double>& assign) {
  const auto& vars = model.variables();
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (assign[j] < vars[j].lower - 1e-9 || assign[j] > vars[j].upper + 1e-9) return false;
  return true;
}

// Optional escape hatch: run `$DEPMINE_EXTERNAL_SOLVER model.lp model.sol`
// and re-verify the claimed solution ("variable value" lines) internally.
std::optional<Solution> try_external(const IlpModel& model) {
  const char* cmd = std::getenv("DEPMINE_EXTERNAL_SOLVER");
  if (cmd == nullptr || *cmd == '\0') return std::nullopt;
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::path dir = fs::temp_directory_path(ec);
  if (ec) return std::nullopt;
  std::string tag = "depmine_" + std::to_string(static_cast<long long>(::getpid()));
  fs::path lp_path = dir / (tag + ".lp");
  fs::path sol_path = dir / (tag + ".sol");
  {
    std::ofstream out(lp_path);
    if (!out) return std::nullopt;
    out << export_lp(model);
  }
  fs::remove(sol_path, ec);
  std::string command = std::string(cmd) + " " + lp_path.string() + " " + sol_path.string();
  int rc = std::system(command.c_str());
  std::optional<Solution> result;
  if (rc == 0) {
    std::ifstream in(sol_path);
    if (in) {
      std::unordered_map<std::string, int> index;
      for (int j = 0; j < model.var_count(); ++j) index.emplace(model.var_name(j), j);
      std::vector<double> assign(static_cast<std::size_t>(model.var_count()), 0.0);
      std::string line;
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string name;
        double value = 0.0;
        if (!(ls >> name >> value)) continue;
        auto it = index.find(name);
        if (it == index.end()) continue;
        assign[static_cast<std::size_t>(it->second)] = value;
      }
      for (double& v : assign) v = std::round(v);
      if (within_bounds(model, assign) && model.max_row_violation(assign) <= kRowTol) {
        Solution sol;
        sol.status = SolveStatus::Optimal;
        sol.objective_value = model.objective_value(assign);
        sol.assignment = std::move(assign);
        result = std::move(sol);
      }
    }
  }
  fs::remove(lp_path, ec);
  fs::remove(sol_path, ec);
  return result;
}

}  // namespace

void SolveLimits::validate() const {
  if (time_limit < 0.0 || node_limit < 0 || gap_tolerance < 0.0)
    throw ConfigError("solve limits must be non-negative");
}

Solution solve(const IlpModel& model, const SolveLimits& limits) {
  limits.validate();
  if (auto external = try_external(model)) return *external;

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  const int n = model.task_count();
  const int nv = model.var_count();
  Solution out;
  LpInstance lp(model);
  Repairer repair(model);
  Rounder rounder(model);

  std::vector<double> root_lo(static_cast<std::size_t>(nv));
  std::vector<double> root_up(static_cast<std::size_t>(nv));
  for (int j = 0; j < nv; ++j) {
    root_lo[static_cast<std::size_t>(j)] = model.variables()[static_cast<std::size_t>(j)].lower;
    root_up[static_cast<std::size_t>(j)] = model.variables()[static_cast<std::size_t>(j)].upper;
  }

  std::vector<double> incumbent;
  double inc_obj = -std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<double> cand) {
    if (cand.empty()) return;
    if (!within_bounds(model, cand)) return;
    if (model.max_row_violation(cand) > kRowTol) return;
    double obj = model.objective_value(cand);
    if (obj > inc_obj + kObjTol) {
      inc_obj = obj;
      incumbent = std::move(cand);
    }
  };

  {
    // Seed: the chain start -> middles (index order) -> end is feasible for
    // typical configs and gives pruning something to bite on immediately.
    Grid<std::uint8_t> arcs(n, n, 0);
    int prev = model.start();
    for (int t = 0; t < n; ++t) {
      if (t == model.start() || t == model.end()) continue;
      arcs(prev, t) = 1;
      prev = t;
    }
    arcs(prev, model.end()) = 1;
    consider(repair.build(arcs));
  }

  // Cut rows are appended to the LP after some bases were saved; extending a
  // saved basis with the new rows' slacks keeps it valid.
  auto extend_basis = [&lp](LpBasis& basis) {
    if (basis.basic.empty()) return;
    while (static_cast<int>(basis.basic.size()) < lp.row_count()) {
      basis.basic.push_back(lp.structural_count() + static_cast<int>(basis.basic.size()));
      basis.at_upper.push_back(0);
    }
  };

  ConnectivityCuts cuts(model, lp);
  std::shared_ptr<const LpBasis> root_warm;
  {
    // Round of cuts at the root: re-solve and separate until the fractional
    // optimum stops violating connectivity.  On tight arc budgets this pulls
    // the root bound from "keep every attractive arc" down to something the
    // tree can actually close.
    LpBasis basis;
    LpResult root = lp.solve(root_lo, root_up, &basis);
    out.stats.lp_iterations += root.iterations;
    for (int round = 0; root.status == LpStatus::Optimal && round < kRootCutRounds; ++round) {
      if (limits.time_limit > 0.0 && elapsed() >= limits.time_limit) break;
      if (cuts.separate(root.values) == 0) break;
      extend_basis(basis);
      root = lp.solve(root_lo, root_up, &basis);
      out.stats.lp_iterations += root.iterations;
      if (std::getenv("DEPMINE_DEBUG_NODES"))
        std::fprintf(stderr, "root round=%d cuts=%d iters=%lld obj=%.6f\n", round, cuts.total(),
                     (long long)root.iterations, root.objective);
    }
    if (root.status == LpStatus::Optimal)
      root_warm = std::make_shared<const LpBasis>(std::move(basis));
  }

  struct BBNode {
    std::int64_t parent;
    int var;
    double lo;
    double up;
    std::shared_ptr<const LpBasis> warm;  // parent's final basis, shared by siblings
  };
  std::vector<BBNode> arena;
  arena.push_back({-1, -1, 0.0, 0.0, std::move(root_warm)});

  using QEntry = std::pair<double, std::int64_t>;  // (bound estimate, node id)
  auto worse = [](const QEntry& a, const QEntry& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<QEntry, std::vector<QEntry>, decltype(worse)> open(worse);
  open.push({std::numeric_limits<double>::infinity(), 0});

  std::vector<double> lo, up;
  bool limit_hit = false;
  bool proved = false;

  while (!open.empty()) {
    if (limits.node_limit > 0 && out.stats.nodes >= limits.node_limit) {
      limit_hit = true;
      break;
    }
    if (limits.time_limit > 0.0 && elapsed() >= limits.time_limit) {
      limit_hit = true;
      break;
    }

    auto [bound_est, id] = open.top();
    open.pop();
    double allowance =
        std::max(kObjTol, limits.gap_tolerance * std::abs(inc_obj));
    if (!incumbent.empty() && bound_est <= inc_obj + allowance) {
      proved = true;  // best-bound order: nothing left can beat the incumbent
      break;
    }

    lo = root_lo;
    up = root_up;
    for (std::int64_t k = id; k >= 0 && arena[static_cast<std::size_t>(k)].var >= 0;
         k = arena[static_cast<std::size_t>(k)].parent) {
      const BBNode& node = arena[static_cast<std::size_t>(k)];
      std::size_t v = static_cast<std::size_t>(node.var);
      lo[v] = std::max(lo[v], node.lo);
      up[v] = std::min(up[v], node.up);
    }

    // Seed the node's LP from the parent's final basis (one bound changed, so
    // few pivots are needed); the node releases its reference once solved.
    std::shared_ptr<const LpBasis> parent_warm =
        std::move(arena[static_cast<std::size_t>(id)].warm);
    LpBasis warm;
    if (parent_warm) {
      warm = *parent_warm;
      extend_basis(warm);
    }
    parent_warm.reset();
    LpResult rel = lp.solve(lo, up, &warm);
    if (std::getenv("DEPMINE_DEBUG_NODES") && rel.iterations > 500)
      std::fprintf(stderr, "node=%lld id=%lld iters=%lld status=%d obj=%.6f\n",
                   (long long)out.stats.nodes, (long long)id, (long long)rel.iterations,
                   (int)rel.status, rel.objective);
    ++out.stats.nodes;
    out.stats.lp_iterations += rel.iterations;
    if (rel.status == LpStatus::Infeasible) continue;
    if (rel.status != LpStatus::Optimal)
      throw SolveError("node relaxation failed numerically");
    double bound = rel.objective;
    // Rounding the relaxation gives the pruning test a real incumbent long
    // before the arc block turns integral on its own.
    consider(repair.build(rounder.build(rel.values)));
    if (!incumbent.empty() && bound <= inc_obj + allowance) continue;

    // Branch on structural fractionality only: arcs first, then the other
    // objective-bearing blocks (two-cycles, forced relaxations).  The covering
    // subgraphs and their ranks never get branched on -- they carry no
    // objective weight, so splitting them leaves the bound flat and the tree
    // just mushrooms.  Once the arc matrix is fixed they are a pure
    // feasibility question, and the repairer answers it exactly.
    const int nn = n * n;
    auto most_fractional = [&](int first, int last) {
      int var = -1;
      double best = kIntTol;
      for (int j = first; j < last; ++j) {
        double v = rel.values[static_cast<std::size_t>(j)];
        double f = std::abs(v - std::round(v));
        if (f > best) {
          best = f;
          var = j;
        }
      }
      return var;
    };
    int branch_var = most_fractional(0, nn);
    if (branch_var < 0) branch_var = most_fractional(3 * nn, 6 * nn);
    if (branch_var < 0) branch_var = most_fractional(6 * nn + 2 * n, nv);
    if (branch_var >= 0) {
      std::size_t bv = static_cast<std::size_t>(branch_var);
      double floor_v = std::floor(rel.values[bv]);
      auto shared_warm = std::make_shared<const LpBasis>(std::move(warm));
      arena.push_back({id, branch_var, floor_v + 1.0, up[bv], shared_warm});
      open.push({bound, static_cast<std::int64_t>(arena.size()) - 1});
      arena.push_back({id, branch_var, lo[bv], floor_v, std::move(shared_warm)});
      open.push({bound, static_cast<std::int64_t>(arena.size()) - 1});
      continue;
    }

    // Arc/two-cycle/forced blocks are all integral: the arc matrix decides the
    // subtree objective, and the repairer builds its best completion (or
    // proves that none exists).
    Grid<std::uint8_t> arcs(n, n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = rel.values[static_cast<std::size_t>(model.var_index(VarKind::Arc, i, j))];
        arcs(i, j) = v > 0.5 ? 1 : 0;
      }
    std::vector<double> completion = repair.build(arcs);
    bool connected = !completion.empty();
    consider(std::move(completion));
    if (!incumbent.empty() &&
        bound <= inc_obj + std::max(kObjTol, limits.gap_tolerance * std::abs(inc_obj)))
      continue;

    // The repair failed, so this arc matrix leaves some task stranded.  A cut
    // against the stranded set removes the configuration from every node's
    // relaxation at once; the node re-queues to solve with the cut in place.
    if (!connected && cuts.total() < kLazyCutCap && cuts.separate(rel.values) > 0) {
      arena[static_cast<std::size_t>(id)].warm =
          std::make_shared<const LpBasis>(std::move(warm));
      open.push({bound, id});
      continue;
    }

    // Otherwise split on an arc the node has not pinned yet; when every arc
    // is pinned the repair above already settled the subtree.
    int fix_var = -1;
    double fix_score = -1.0;
    for (int j = 0; j < nn; ++j) {
      std::size_t v = static_cast<std::size_t>(j);
      if (up[v] - lo[v] < 0.5) continue;
      double score = std::abs(model.objective()[v]);
      if (score > fix_score) {
        fix_score = score;
        fix_var = j;
      }
    }
    if (fix_var < 0) continue;
    std::size_t fv = static_cast<std::size_t>(fix_var);
    auto shared_warm = std::make_shared<const LpBasis>(std::move(warm));
    arena.push_back({id, fix_var, 1.0, up[fv], shared_warm});
    open.push({bound, static_cast<std::int64_t>(arena.size()) - 1});
    arena.push_back({id, fix_var, lo[fv], 0.0, std::move(shared_warm)});
    open.push({bound, static_cast<std::int64_t>(arena.size()) - 1});
  }

  out.stats.wall_seconds = elapsed();
  if (limit_hit && !(proved || open.empty())) {
    out.status = SolveStatus::LimitReached;
    if (!incumbent.empty()) {
      out.assignment = std::move(incumbent);
      out.objective_value = inc_obj;
    }
    return out;
  }
  if (incumbent.empty()) {
    out.status = SolveStatus::Infeasible;
    return out;
  }
  out.status = SolveStatus::Optimal;
  out.assignment = std::move(incumbent);
  out.objective_value = inc_obj;
  return out;
}

Solution brute_force_solve(const DependencyMeasures& meas, int start, int end,
                           const DiscoveryConfig& cfg, int cap) {
  const int n = meas.n;
  if (n > cap)
    throw SolveError("brute force refused: alphabet size " + std::to_string(n) +
                     " exceeds cap " + std::to_string(cap));
  IlpModel model = build_model(meas, start, end, cfg);
  Repairer repair(model);

  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != start && i != end) cells.emplace_back(i, j);
  const int k = static_cast<int>(cells.size());
  if (k > 30) throw SolveError("brute force refused: search space too large");

  const double arc_budget = static_cast<double>(n) * cfg.max_arcs_ratio + 1e-9;
  Solution best;
  best.status = SolveStatus::Infeasible;
  Grid<std::uint8_t> best_arcs(n, n, 0);
  int best_count = 0;

  Grid<std::uint8_t> arcs(n, n, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    int arc_count = std::popcount(mask);
    if (static_cast<double>(arc_count) > arc_budget) continue;
    arcs.fill(0);
    for (int b = 0; b < k; ++b)
      if (mask >> b & 1u) arcs(cells[static_cast<std::size_t>(b)].first,
                                cells[static_cast<std::size_t>(b)].second) = 1;

    std::vector<double> assign = repair.build(arcs);
    if (assign.empty()) continue;
    ++best.stats.nodes;
    if (model.max_row_violation(assign) > kRowTol) continue;
    double obj = model.objective_value(assign);

    bool better;
    if (best.status != SolveStatus::Optimal) {
      better = true;
    } else if (obj > best.objective_value + kObjTol) {
      better = true;
    } else if (obj >= best.objective_value - kObjTol) {
      better = arc_count < best_count ||
               (arc_count == best_count && arcs.cells() < best_arcs.cells());
    } else {
      better = false;
    }
    if (better) {
      best.status = SolveStatus::Optimal;
      best.objective_value = obj;
      best.assignment = std::move(assign);
      best_arcs = arcs;
      best_count = arc_count;
    }
  }
  return best;
}

}  // namespace depmine
