#include "depmine/eval.hpp"

#include <json.hpp>

#include "depmine/errors.hpp"
#include "depmine/relations.hpp"

namespace depmine {

namespace {

// Maps every log task onto a graph task by name; the graph may have extra
// tasks, the log may not.
std::vector<int> map_tasks(const EventLog& log, const DependencyGraph& g) {
  std::vector<int> to_graph(static_cast<std::size_t>(log.alphabet.size()), -1);
  for (int t = 0; t < log.alphabet.size(); ++t) {
    const std::string& name = log.alphabet.name(t);
    int found = -1;
    for (int gt = 0; gt < g.task_count(); ++gt) {
      if (g.tasks()[static_cast<std::size_t>(gt)] == name) {
        found = gt;
        break;
      }
    }
    if (found < 0) throw EvalError("log task '" + name + "' is not present in the graph");
    to_graph[static_cast<std::size_t>(t)] = found;
  }
  return to_graph;
}

}  // namespace

FitnessReport fitness(const EventLog& log, const DependencyGraph& g, FitnessMode mode) {
  if (log.traces.empty()) throw EvalError("cannot replay an empty log");
  std::vector<int> to_graph = map_tasks(log, g);
  int ng = g.task_count();
  Grid<std::uint8_t> inp(ng, ng, 0);  // inp(a, b) = 1 iff b is a prerequisite of a
  Grid<std::uint8_t> out(ng, ng, 0);
  std::vector<std::uint8_t> has_inp(static_cast<std::size_t>(ng), 0);
  std::vector<std::uint8_t> has_out(static_cast<std::size_t>(ng), 0);
  for (auto [from, to] : g.arcs()) {
    inp(to, from) = 1;
    has_inp[static_cast<std::size_t>(to)] = 1;
    out(from, to) = 1;
    has_out[static_cast<std::size_t>(from)] = 1;
  }

  FitnessReport rep;
  rep.ntl = log.total_traces();
  rep.nel = log.total_events();

  std::vector<std::uint8_t> pre_viol, post_viol;
  std::vector<std::uint8_t> occurred(static_cast<std::size_t>(ng), 0);
  for (const Trace& trace : log.traces) {
    std::size_t len = trace.events.size();
    pre_viol.assign(len, 0);
    post_viol.assign(len, 0);

    // Forward sweep: does any earlier event provide a prerequisite?
    std::fill(occurred.begin(), occurred.end(), 0);
    for (std::size_t k = 0; k < len; ++k) {
      int a = to_graph[static_cast<std::size_t>(trace.events[k])];
      if (has_inp[static_cast<std::size_t>(a)]) {
        bool satisfied = false;
        for (int b = 0; b < ng && !satisfied; ++b)
          if (occurred[static_cast<std::size_t>(b)] && inp(a, b)) satisfied = true;
        if (!satisfied) pre_viol[k] = 1;
      }
      occurred[static_cast<std::size_t>(a)] = 1;
    }
    // Backward sweep: does any later event consume a post-requisite?
    std::fill(occurred.begin(), occurred.end(), 0);
    for (std::size_t k = len; k-- > 0;) {
      int a = to_graph[static_cast<std::size_t>(trace.events[k])];
      if (has_out[static_cast<std::size_t>(a)]) {
        bool satisfied = false;
        for (int b = 0; b < ng && !satisfied; ++b)
          if (occurred[static_cast<std::size_t>(b)] && out(a, b)) satisfied = true;
        if (!satisfied) post_viol[k] = 1;
      }
      occurred[static_cast<std::size_t>(a)] = 1;
    }

    std::int64_t trace_pre = 0, trace_post = 0, trace_fit = 0;
    bool sticky_pre = false, sticky_post = false;
    for (std::size_t k = 0; k < len; ++k) {
      trace_pre += pre_viol[k];
      trace_post += post_viol[k];
      sticky_pre = sticky_pre || pre_viol[k];
      sticky_post = sticky_post || post_viol[k];
      bool fits = mode == FitnessMode::TraceFlags ? !(sticky_pre || sticky_post)
                                                  : !(pre_viol[k] || post_viol[k]);
      trace_fit += fits ? 1 : 0;
    }
    rep.afe += trace.count * trace_fit;
    rep.aewpr += trace.count * trace_pre;
    rep.aewpo += trace.count * trace_post;
    if (trace_pre > 0) rep.ntewpr += trace.count;
    if (trace_post > 0) rep.ntewpo += trace.count;
  }

  rep.penalty = static_cast<double>(rep.aewpr) / static_cast<double>(rep.ntl - rep.ntewpr + 1) +
                static_cast<double>(rep.aewpo) / static_cast<double>(rep.ntl - rep.ntewpo + 1);
  rep.fim = (static_cast<double>(rep.afe) - rep.penalty) / static_cast<double>(rep.nel);
  return rep;
}

PrecisionReport precision(const EventLog& log, const DependencyGraph& g) {
  std::vector<int> to_graph = map_tasks(log, g);
  EventuallyFollows ef = eventually_follows(log);
  Reachability r = reachability(g);

  PrecisionReport rep;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) rep.possible += r.reach(i, j);
  if (rep.possible == 0) throw EvalError("empty reachability");

  for (int x = 0; x < ef.n; ++x)
    for (int y = 0; y < ef.n; ++y)
      if (ef.fl(x, y) &&
          r.reach(to_graph[static_cast<std::size_t>(x)], to_graph[static_cast<std::size_t>(y)]))
        ++rep.matched;
  rep.prm = static_cast<double>(rep.matched) / static_cast<double>(rep.possible);
  return rep;
}

double f_score(double fim, double prm) {
  if (fim + prm <= 0.0) return 0.0;
  return 2.0 * fim * prm / (fim + prm);
}

QualityReport quality(const EventLog& log, const DependencyGraph& g, FitnessMode mode) {
  QualityReport report;
  report.fitness_detail = fitness(log, g, mode);
  report.precision_detail = precision(log, g);
  report.fim = report.fitness_detail.fim;
  report.prm = report.precision_detail.prm;
  report.fscore = f_score(report.fim, report.prm);
  report.an = g.arc_count();
  return report;
}

std::string quality_to_json(const QualityReport& report) {
  nlohmann::ordered_json j;
  j["fim"] = report.fim;
  j["prm"] = report.prm;
  j["fscore"] = report.fscore;
  j["an"] = report.an;
  j["fitness"] = {{"afe", report.fitness_detail.afe},
                  {"aewpr", report.fitness_detail.aewpr},
                  {"aewpo", report.fitness_detail.aewpo},
                  {"ntewpr", report.fitness_detail.ntewpr},
                  {"ntewpo", report.fitness_detail.ntewpo},
                  {"nel", report.fitness_detail.nel},
                  {"ntl", report.fitness_detail.ntl},
                  {"penalty", report.fitness_detail.penalty}};
  j["precision"] = {{"matched", report.precision_detail.matched},
                    {"possible", report.precision_detail.possible}};
  return j.dump(2) + "\n";
}

}  // namespace depmine
