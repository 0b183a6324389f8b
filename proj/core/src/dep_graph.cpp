#include "depmine/dep_graph.hpp"

#include <algorithm>
#include <deque>

#include <json.hpp>

#include "depmine/errors.hpp"

namespace depmine {

DependencyGraph::DependencyGraph(std::vector<std::string> tasks, int start, int end)
    : tasks_(std::move(tasks)), start_(start), end_(end) {
  int n = task_count();
  if (n < 2) throw ModelError("dependency graph needs at least two tasks");
  if (start < 0 || start >= n || end < 0 || end >= n)
    throw ModelError("start/end task id out of range");
  if (start == end) throw ModelError("start and end tasks must differ");
}

void DependencyGraph::add_arc(int from, int to) {
  int n = task_count();
  if (from < 0 || from >= n || to < 0 || to >= n)
    throw ModelError("arc endpoint out of range: (" + std::to_string(from) + "," +
                     std::to_string(to) + ")");
  if (to == start_) throw ModelError("arc may not enter the start task");
  if (from == end_) throw ModelError("arc may not leave the end task");
  auto arc = std::make_pair(from, to);
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), arc);
  if (it != arcs_.end() && *it == arc) return;
  arcs_.insert(it, arc);
}

bool DependencyGraph::has_arc(int from, int to) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), std::make_pair(from, to));
}

std::vector<std::vector<int>> DependencyGraph::predecessors() const {
  std::vector<std::vector<int>> inp(static_cast<std::size_t>(task_count()));
  for (auto [from, to] : arcs_) inp[static_cast<std::size_t>(to)].push_back(from);
  for (auto& v : inp) std::sort(v.begin(), v.end());
  return inp;
}

std::vector<std::vector<int>> DependencyGraph::successors() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(task_count()));
  for (auto [from, to] : arcs_) out[static_cast<std::size_t>(from)].push_back(to);
  return out;  // already sorted: arcs_ is sorted lexicographically
}

namespace {

std::vector<std::uint8_t> bfs(int n, int origin, const std::vector<std::vector<int>>& adjacency) {
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(n), 0);
  std::deque<int> queue{origin};
  visited[static_cast<std::size_t>(origin)] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adjacency[static_cast<std::size_t>(v)]) {
      if (!visited[static_cast<std::size_t>(w)]) {
        visited[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  return visited;
}

}  // namespace

PathReport validate_paths(const DependencyGraph& g) {
  int n = g.task_count();
  auto forward = g.successors();
  auto backward = g.predecessors();
  auto from_start = bfs(n, g.start(), forward);
  auto to_end = bfs(n, g.end(), backward);

  PathReport report;
  for (int t = 0; t < n; ++t) {
    if (!from_start[static_cast<std::size_t>(t)]) report.unreachable_from_start.push_back(t);
    if (!to_end[static_cast<std::size_t>(t)]) report.cannot_reach_end.push_back(t);
  }
  report.ok = report.unreachable_from_start.empty() && report.cannot_reach_end.empty();
  return report;
}

Reachability reachability(const DependencyGraph& g) {
  Reachability r;
  r.n = g.task_count();
  r.reach = Grid<std::uint8_t>(r.n, r.n, 0);
  for (auto [from, to] : g.arcs()) r.reach(from, to) = 1;
  for (int k = 0; k < r.n; ++k)
    for (int i = 0; i < r.n; ++i) {
      if (!r.reach(i, k)) continue;
      for (int j = 0; j < r.n; ++j)
        if (r.reach(k, j)) r.reach(i, j) = 1;
    }
  return r;
}

DependencyGraph baseline_threshold_miner(const DependencyMeasures& meas,
                                         const std::vector<std::string>& tasks, int start, int end,
                                         double dep_thresh, double sloop_thresh,
                                         double loop_thresh) {
  int n = meas.n;
  if (static_cast<int>(tasks.size()) != n) throw ModelError("task names do not match measures");
  DependencyGraph g(tasks, start, end);

  for (int i = 0; i < n; ++i) {
    double s = meas.self_loop[static_cast<std::size_t>(i)];
    if (s > 0.0 && s >= sloop_thresh) g.add_arc(i, i);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double d = meas.arc(i, j);
      if (d > 0.0 && d >= dep_thresh) g.add_arc(i, j);
      double l = meas.two_loop(i, j);
      if (i < j && l > 0.0 && l >= loop_thresh) {
        g.add_arc(i, j);
        g.add_arc(j, i);
      }
    }
  }

  // Connectivity repair: give every task at least one incoming and one
  // outgoing arc (the start needs no incoming, the end no outgoing).  An
  // existing loop arc already counts, which is exactly why this repair cannot
  // guarantee start→end paths.
  auto inp = g.predecessors();
  auto out = g.successors();
  for (int t = 0; t < n; ++t) {
    if (t != start && inp[static_cast<std::size_t>(t)].empty()) {
      int best = -1;
      for (int src = 0; src < n; ++src) {
        if (src == t || src == end) continue;
        if (best < 0 || meas.arc(src, t) > meas.arc(best, t)) best = src;
      }
      if (best >= 0) g.add_arc(best, t);
    }
    if (t != end && out[static_cast<std::size_t>(t)].empty()) {
      int best = -1;
      for (int dst = 0; dst < n; ++dst) {
        if (dst == t || dst == start) continue;
        if (best < 0 || meas.arc(t, dst) > meas.arc(t, best)) best = dst;
      }
      if (best >= 0) g.add_arc(t, best);
    }
  }
  return g;
}

std::string to_dot(const DependencyGraph& g) {
  std::string out = "digraph dependency_graph {\n  rankdir=LR;\n";
  auto quote = [](const std::string& name) {
    std::string q = "\"";
    for (char c : name) {
      if (c == '"' || c == '\\') q.push_back('\\');
      q.push_back(c);
    }
    q.push_back('"');
    return q;
  };
  for (int t = 0; t < g.task_count(); ++t) {
    out += "  n" + std::to_string(t) + " [label=" + quote(g.tasks()[static_cast<std::size_t>(t)]);
    if (t == g.start()) out += ", shape=circle, style=bold";
    else if (t == g.end()) out += ", shape=doublecircle, style=bold";
    else out += ", shape=box";
    out += "];\n";
  }
  for (auto [from, to] : g.arcs())
    out += "  n" + std::to_string(from) + " -> n" + std::to_string(to) + ";\n";
  out += "}\n";
  return out;
}

std::string graph_to_json(const DependencyGraph& g) {
  nlohmann::ordered_json j;
  j["tasks"] = g.tasks();
  j["arcs"] = nlohmann::ordered_json::array();
  for (auto [from, to] : g.arcs()) j["arcs"].push_back({from, to});
  j["start"] = g.start();
  j["end"] = g.end();
  return j.dump(2) + "\n";
}

DependencyGraph graph_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid graph JSON: ") + e.what());
  }
  try {
    std::vector<std::string> tasks = j.at("tasks").get<std::vector<std::string>>();
    DependencyGraph g(std::move(tasks), j.at("start").get<int>(), j.at("end").get<int>());
    for (const auto& arc : j.at("arcs")) {
      if (!arc.is_array() || arc.size() != 2) throw ParseError("arc must be a pair [from,to]");
      g.add_arc(arc[0].get<int>(), arc[1].get<int>());
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph JSON field error: ") + e.what());
  } catch (const ModelError& e) {
    throw ParseError(std::string("graph JSON invalid: ") + e.what());
  }
}

}  // namespace depmine
