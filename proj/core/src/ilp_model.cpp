#include "depmine/ilp_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "depmine/dep_graph.hpp"
#include "depmine/errors.hpp"

namespace depmine {

void DiscoveryConfig::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(dep_thresh) || !in_unit(sloop_thresh) || !in_unit(loop_thresh))
    throw ConfigError("thresholds must lie in [0,1]");
  if (!(max_arcs_ratio > 0.0)) throw ConfigError("max_arcs_ratio must be positive");
  if (max_outputs < 0 || max_inputs < 0)
    throw ConfigError("degree caps must be non-negative");
  if (alpha < 0.0 || beta < 0.0) throw ConfigError("alpha/beta must be non-negative");
  if (big_m < 0.0) throw ConfigError("big_m must be positive (or 0 for automatic)");
  if (sparsity_epsilon < 0.0 || sparsity_epsilon > 1e-3)
    throw ConfigError("sparsity_epsilon must be in [0, 1e-3]");
}

int IlpModel::var_index(VarKind kind, int i, int j) const {
  int n = n_;
  int nn = n * n;
  switch (kind) {
    case VarKind::Arc: return 0 * nn + i * n + j;
    case VarKind::SpanIn: return 1 * nn + i * n + j;
    case VarKind::SpanOut: return 2 * nn + i * n + j;
    case VarKind::TwoCycle: return 3 * nn + i * n + j;
    case VarKind::ForcedArc: return 4 * nn + i * n + j;
    case VarKind::ForcedTwoLoop: return 5 * nn + i * n + j;
    case VarKind::RankIn: return 6 * nn + i;
    case VarKind::RankOut: return 6 * nn + n + i;
    case VarKind::ForcedSelfLoop: return 6 * nn + 2 * n + i;
  }
  throw ModelError("unknown variable kind");
}

std::string IlpModel::var_name(int index) const {
  const VarInfo& v = vars_.at(static_cast<std::size_t>(index));
  auto pair_name = [&](const char* tag) {
    return std::string(tag) + "_" + std::to_string(v.i) + "_" + std::to_string(v.j);
  };
  auto vec_name = [&](const char* tag) { return std::string(tag) + "_" + std::to_string(v.i); };
  switch (v.kind) {
    case VarKind::Arc: return pair_name("E");
    case VarKind::SpanIn: return pair_name("x");
    case VarKind::SpanOut: return pair_name("y");
    case VarKind::TwoCycle: return pair_name("R");
    case VarKind::ForcedArc: return pair_name("forced");
    case VarKind::ForcedTwoLoop: return pair_name("forcel");
    case VarKind::RankIn: return vec_name("u");
    case VarKind::RankOut: return vec_name("q");
    case VarKind::ForcedSelfLoop: return vec_name("forcesl");
  }
  throw ModelError("unknown variable kind");
}

double IlpModel::objective_value(std::span<const double> assignment) const {
  double value = 0.0;
  for (std::size_t k = 0; k < objective_.size(); ++k) value += objective_[k] * assignment[k];
  return value;
}

double IlpModel::max_row_violation(std::span<const double> assignment) const {
  double worst = 0.0;
  for (const LinearRow& row : rows_) {
    double lhs = 0.0;
    for (auto [var, coeff] : row.terms) lhs += coeff * assignment[static_cast<std::size_t>(var)];
    double violation = 0.0;
    switch (row.rel) {
      case RowRelation::LessEqual: violation = lhs - row.rhs; break;
      case RowRelation::GreaterEqual: violation = row.rhs - lhs; break;
      case RowRelation::Equal: violation = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

namespace {

class RowBuilder {
 public:
  explicit RowBuilder(std::string name) : row_{std::move(name), {}, RowRelation::LessEqual, 0.0} {}

  RowBuilder& term(int var, double coeff) {
    coeffs_[var] += coeff;
    return *this;
  }
  LinearRow done(RowRelation rel, double rhs) {
    row_.rel = rel;
    row_.rhs = rhs;
    for (auto [var, coeff] : coeffs_)
      if (coeff != 0.0) row_.terms.emplace_back(var, coeff);
    return std::move(row_);
  }

 private:
  LinearRow row_;
  std::map<int, double> coeffs_;
};

std::string pair_suffix(int i, int j) {
  return "_" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

IlpModel build_model(const DependencyMeasures& meas, int start, int end,
                     const DiscoveryConfig& cfg) {
  int n = meas.n;
  if (n < 2) throw ModelError("model needs at least two tasks");
  if (start == end) throw ModelError("start and end tasks must differ");
  if (start < 0 || start >= n || end < 0 || end >= n)
    throw ModelError("start/end task id out of range");
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(meas.self_loop[static_cast<std::size_t>(i)]))
      throw ModelError("non-finite self-loop measure");
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(meas.arc(i, j)) || !std::isfinite(meas.two_loop(i, j)))
        throw ModelError("non-finite dependency measure");
  }

  IlpModel model;
  model.n_ = n;
  model.start_ = start;
  model.end_ = end;
  model.big_m_ = cfg.big_m > 0.0 ? cfg.big_m : 10.0 * (static_cast<double>(n) * n + n);
  const double M = model.big_m_;
  const double eps = cfg.sparsity_epsilon;

  // Variable blocks in wire order; unusable cells are pinned to zero.
  int total = 6 * n * n + 3 * n;
  model.vars_.reserve(static_cast<std::size_t>(total));
  model.objective_.assign(static_cast<std::size_t>(total), 0.0);
  auto add_block = [&](VarKind kind) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        VarInfo v{kind, i, j, VarDomain::Binary, 0.0, 1.0};
        bool unused = (kind == VarKind::TwoCycle && i == j) ||
                      (kind == VarKind::ForcedArc && i == j) ||
                      (kind == VarKind::ForcedTwoLoop && i >= j);
        if (unused) v.upper = 0.0;
        model.vars_.push_back(v);
      }
  };
  add_block(VarKind::Arc);
  add_block(VarKind::SpanIn);
  add_block(VarKind::SpanOut);
  add_block(VarKind::TwoCycle);
  add_block(VarKind::ForcedArc);
  add_block(VarKind::ForcedTwoLoop);
  for (VarKind kind : {VarKind::RankIn, VarKind::RankOut}) {
    for (int i = 0; i < n; ++i)
      model.vars_.push_back(VarInfo{kind, i, 0, VarDomain::Integer, 0.0, double(n - 1)});
  }
  for (int i = 0; i < n; ++i)
    model.vars_.push_back(VarInfo{VarKind::ForcedSelfLoop, i, 0, VarDomain::Binary, 0.0, 1.0});

  auto E = [&](int i, int j) { return model.var_index(VarKind::Arc, i, j); };
  auto X = [&](int i, int j) { return model.var_index(VarKind::SpanIn, i, j); };
  auto Y = [&](int i, int j) { return model.var_index(VarKind::SpanOut, i, j); };
  auto R = [&](int i, int j) { return model.var_index(VarKind::TwoCycle, i, j); };
  auto FORCED = [&](int i, int j) { return model.var_index(VarKind::ForcedArc, i, j); };
  auto FORCEL = [&](int i, int j) { return model.var_index(VarKind::ForcedTwoLoop, i, j); };
  auto U = [&](int i) { return model.var_index(VarKind::RankIn, i); };
  auto Q = [&](int i) { return model.var_index(VarKind::RankOut, i); };
  auto FORCESL = [&](int i) { return model.var_index(VarKind::ForcedSelfLoop, i); };

  // Objective: measure mass of chosen arcs/loops, minus big-M punishments for
  // below-threshold selections, minus a tiny per-arc tie-break.
  for (int i = 0; i < n; ++i) {
    model.objective_[static_cast<std::size_t>(E(i, i))] =
        cfg.alpha * meas.self_loop[static_cast<std::size_t>(i)] - eps;
    model.objective_[static_cast<std::size_t>(FORCESL(i))] =
        -M * (1.0 - meas.self_loop[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      model.objective_[static_cast<std::size_t>(E(i, j))] = meas.arc(i, j) - eps;
      model.objective_[static_cast<std::size_t>(R(i, j))] = cfg.beta / 2.0 * meas.two_loop(i, j);
      model.objective_[static_cast<std::size_t>(FORCED(i, j))] = -M * (1.0 - meas.arc(i, j));
      if (i < j)
        model.objective_[static_cast<std::size_t>(FORCEL(i, j))] =
            -M * (1.0 - meas.two_loop(i, j));
    }
  }

  // Row families in fixed order; the total tally is pinned by regression.
  auto& rows = model.rows_;

  {  // no arcs may enter the start task
    RowBuilder b("into_start");
    for (int i = 0; i < n; ++i) b.term(E(i, start), 1.0);
    rows.push_back(b.done(RowRelation::Equal, 0.0));
  }
  {  // no arcs may leave the end task
    RowBuilder b("out_of_end");
    for (int j = 0; j < n; ++j) b.term(E(end, j), 1.0);
    rows.push_back(b.done(RowRelation::Equal, 0.0));
  }
  for (int i = 0; i < n; ++i)  // covering-in subgraph uses graph arcs only
    for (int j = 0; j < n; ++j) {
      RowBuilder b("span_in_sub" + pair_suffix(i, j));
      b.term(X(i, j), 1.0).term(E(i, j), -1.0);
      rows.push_back(b.done(RowRelation::LessEqual, 0.0));
    }
  for (int i = 0; i < n; ++i)  // rank ordering keeps the in-subgraph acyclic
    for (int j = 0; j < n; ++j) {
      RowBuilder b("span_in_order" + pair_suffix(i, j));
      b.term(U(i), 1.0).term(U(j), -1.0).term(X(i, j), double(n));
      rows.push_back(b.done(RowRelation::LessEqual, double(n - 1)));
    }
  for (int j = 0; j < n; ++j) {  // each non-start task gets exactly one in-arc
    if (j == start) continue;
    RowBuilder b("span_in_one_" + std::to_string(j));
    for (int i = 0; i < n; ++i) b.term(X(i, j), 1.0);
    rows.push_back(b.done(RowRelation::Equal, 1.0));
  }
  for (int i = 0; i < n; ++i)  // covering-out subgraph uses graph arcs only
    for (int j = 0; j < n; ++j) {
      RowBuilder b("span_out_sub" + pair_suffix(i, j));
      b.term(Y(i, j), 1.0).term(E(i, j), -1.0);
      rows.push_back(b.done(RowRelation::LessEqual, 0.0));
    }
  for (int i = 0; i < n; ++i)  // rank ordering keeps the out-subgraph acyclic
    for (int j = 0; j < n; ++j) {
      RowBuilder b("span_out_order" + pair_suffix(i, j));
      b.term(Q(i), 1.0).term(Q(j), -1.0).term(Y(i, j), double(n));
      rows.push_back(b.done(RowRelation::LessEqual, double(n - 1)));
    }
  for (int i = 0; i < n; ++i) {  // each non-end task gets exactly one out-arc
    if (i == end) continue;
    RowBuilder b("span_out_one_" + std::to_string(i));
    for (int j = 0; j < n; ++j) b.term(Y(i, j), 1.0);
    rows.push_back(b.done(RowRelation::Equal, 1.0));
  }
  for (int i = 0; i < n; ++i)  // a two-cycle variable turns on when both arcs do
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RowBuilder b("twocycle_lb" + pair_suffix(i, j));
      b.term(R(i, j), 1.0).term(E(i, j), -1.0).term(E(j, i), -1.0);
      rows.push_back(b.done(RowRelation::GreaterEqual, -1.0));
    }
  for (int i = 0; i < n; ++i)  // ... and off when either arc is absent
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RowBuilder b("twocycle_ub" + pair_suffix(i, j));
      b.term(R(i, j), 2.0).term(E(i, j), -1.0).term(E(j, i), -1.0);
      rows.push_back(b.done(RowRelation::LessEqual, 0.0));
    }
  for (int i = 0; i < n; ++i)  // no two-cycle between two self-looping tasks
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RowBuilder b("twocycle_selfloop" + pair_suffix(i, j));
      b.term(R(i, j), 1.0).term(E(i, i), 1.0).term(E(j, j), 1.0);
      rows.push_back(b.done(RowRelation::LessEqual, 2.0));
    }
  {  // global arc budget
    RowBuilder b("arc_budget");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b.term(E(i, j), 1.0);
    rows.push_back(b.done(RowRelation::LessEqual, cfg.max_arcs_ratio * n));
  }
  for (int i = 0; i < n; ++i) {  // out-degree cap
    RowBuilder b("outdeg_" + std::to_string(i));
    for (int j = 0; j < n; ++j) b.term(E(i, j), 1.0);
    rows.push_back(b.done(RowRelation::LessEqual, double(cfg.max_outputs)));
  }
  for (int j = 0; j < n; ++j) {  // in-degree cap
    RowBuilder b("indeg_" + std::to_string(j));
    for (int i = 0; i < n; ++i) b.term(E(i, j), 1.0);
    rows.push_back(b.done(RowRelation::LessEqual, double(cfg.max_inputs)));
  }
  // Threshold rows.  A binding row (measure strictly below the threshold) is
  // emitted in its integer-equivalent indicator form (selection minus escape
  // minus punishment <= 0): the raw `thresh*E - escape - punish <= measure`
  // shape admits fractional punishment in the relaxation, which hides nearly
  // the whole big-M charge from the bound and cripples pruning.  Both shapes
  // have the same integer solutions; only the relaxation differs.
  for (int i = 0; i < n; ++i)  // arcs below dep_thresh need forced (or a two-cycle)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RowBuilder b("arc_thresh" + pair_suffix(i, j));
      double d = std::max(0.0, meas.arc(i, j));
      if (cfg.dep_thresh > d) {
        b.term(E(i, j), 1.0).term(R(i, j), -1.0).term(FORCED(i, j), -1.0);
        rows.push_back(b.done(RowRelation::LessEqual, 0.0));
      } else {
        b.term(E(i, j), cfg.dep_thresh).term(R(i, j), -1.0).term(FORCED(i, j), -1.0);
        rows.push_back(b.done(RowRelation::LessEqual, d));
      }
    }
  for (int i = 0; i < n; ++i) {  // self-loops below sloop_thresh need forcesl
    RowBuilder b("selfloop_thresh_" + std::to_string(i));
    double s = meas.self_loop[static_cast<std::size_t>(i)];
    if (cfg.sloop_thresh > s) {
      b.term(E(i, i), 1.0).term(FORCESL(i), -1.0);
      rows.push_back(b.done(RowRelation::LessEqual, 0.0));
    } else {
      b.term(E(i, i), cfg.sloop_thresh).term(FORCESL(i), -1.0);
      rows.push_back(b.done(RowRelation::LessEqual, s));
    }
  }
  for (int i = 0; i < n; ++i)  // two-cycles below loop_thresh need forcel
    for (int j = i + 1; j < n; ++j) {
      RowBuilder b("twoloop_thresh" + pair_suffix(i, j));
      double l = meas.two_loop(i, j);
      if (cfg.loop_thresh > l) {
        b.term(R(i, j), 1.0).term(FORCEL(i, j), -1.0);
        rows.push_back(b.done(RowRelation::LessEqual, 0.0));
      } else {
        b.term(R(i, j), cfg.loop_thresh).term(FORCEL(i, j), -1.0);
        rows.push_back(b.done(RowRelation::LessEqual, l));
      }
    }

  return model;
}

DependencyGraph extract_graph(const IlpModel& model, const Solution& sol,
                              const std::vector<std::string>& task_names) {
  if (sol.status != SolveStatus::Optimal)
    throw ModelError("extraction refused: solution is not optimal");
  if (static_cast<int>(task_names.size()) != model.task_count())
    throw ModelError("task names do not match model size");
  if (static_cast<int>(sol.assignment.size()) != model.var_count())
    throw ModelError("assignment does not match model variables");

  DependencyGraph g(task_names, model.start(), model.end());
  int n = model.task_count();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sol.assignment[static_cast<std::size_t>(model.var_index(VarKind::Arc, i, j))] > 0.5)
        g.add_arc(i, j);
  return g;
}

std::string model_to_json(const IlpModel& model) {
  nlohmann::ordered_json j;
  j["tasks"] = model.task_count();
  j["start"] = model.start();
  j["end"] = model.end();
  j["big_m"] = model.big_m();
  j["variables"] = nlohmann::ordered_json::array();
  for (int v = 0; v < model.var_count(); ++v) {
    const VarInfo& info = model.variables()[static_cast<std::size_t>(v)];
    j["variables"].push_back({{"name", model.var_name(v)},
                              {"domain", info.domain == VarDomain::Binary ? "binary" : "integer"},
                              {"lower", info.lower},
                              {"upper", info.upper},
                              {"objective", model.objective()[static_cast<std::size_t>(v)]}});
  }
  j["rows"] = nlohmann::ordered_json::array();
  for (const LinearRow& row : model.rows()) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (auto [var, coeff] : row.terms) terms.push_back({{"var", model.var_name(var)}, {"coeff", coeff}});
    const char* rel = row.rel == RowRelation::LessEqual ? "<="
                      : row.rel == RowRelation::Equal   ? "="
                                                        : ">=";
    j["rows"].push_back(
        {{"name", row.name}, {"terms", std::move(terms)}, {"rel", rel}, {"rhs", row.rhs}});
  }
  return j.dump(2) + "\n";
}

}  // namespace depmine
