#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "depmine/csv.hpp"
#include "depmine/dep_graph.hpp"
#include "depmine/errors.hpp"
#include "depmine/eval.hpp"
#include "depmine/event_log.hpp"
#include "depmine/ilp_model.hpp"
#include "depmine/measures.hpp"
#include "depmine/relations.hpp"
#include "depmine/solver.hpp"
#include "depmine/synthetic.hpp"
#include "depmine/xes.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace depmine;

namespace {

// Exit codes: 0 success, 1 solver infeasible/limit, 2 input error, 3 internal.
constexpr int kExitSolver = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

// Re-throws a library error with the pipeline stage prepended.
template <typename Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(name + ": " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(name + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  } catch (const ModelError& e) {
    throw ModelError(name + ": " + e.what());
  } catch (const SolveError& e) {
    throw SolveError(name + ": " + e.what());
  } catch (const EvalError& e) {
    throw EvalError(name + ": " + e.what());
  } catch (const GenerateError& e) {
    throw GenerateError(name + ": " + e.what());
  }
}

// Tracks written artifacts; anything not kept is removed, so a failed run
// leaves no partial outputs behind.
class ArtifactSink {
 public:
  ~ArtifactSink() {
    if (keep_) return;
    for (const fs::path& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }
  void write(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError("failed while writing '" + path.string() + "'");
    written_.push_back(path);
  }
  void keep() { keep_ = true; }

 private:
  std::vector<fs::path> written_;
  bool keep_ = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct InputOpts {
  std::string path;
  std::string format = "auto";
  CsvMapping csv;

  void attach(CLI::App* cmd, const std::string& label = "input") {
    cmd->add_option(label, path, "event log (XES, CSV, or canonical JSON)")->required();
    cmd->add_option("--format", format, "log format: auto|xes|csv|json (default: by extension)");
    cmd->add_option("--case-col", csv.case_column, "CSV case-id column (default: case)");
    cmd->add_option("--activity-col", csv.activity_column, "CSV activity column (default: activity)");
    cmd->add_option("--order-col", csv.order_column,
                    "CSV ordering column; empty keeps file order (default: order)");
  }
};

EventLog load_log(const InputOpts& in) {
  std::string fmt = in.format;
  if (fmt == "auto") {
    std::string ext = fs::path(in.path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".xes") fmt = "xes";
    else if (ext == ".csv") fmt = "csv";
    else if (ext == ".json") fmt = "json";
    else throw ConfigError("cannot infer log format of '" + in.path + "' (use --format)");
  }
  std::string text = read_file(in.path);
  if (fmt == "xes") return parse_xes_text(text);
  if (fmt == "csv") return parse_csv_text(text, in.csv);
  if (fmt == "json") return log_from_json(text);
  throw ConfigError("unknown log format '" + fmt + "'");
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError(what + ": cannot parse number '" + text + "'");
  return value;
}

void set_config_key(DiscoveryConfig& cfg, const std::string& key, const std::string& value) {
  auto as_int = [&](const char* what) {
    double v = parse_double(value, what);
    if (v != std::floor(v)) throw ConfigError(std::string(what) + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
  };
  if (key == "DepThresh") cfg.dep_thresh = parse_double(value, key);
  else if (key == "SLoopThresh") cfg.sloop_thresh = parse_double(value, key);
  else if (key == "LoopThresh") cfg.loop_thresh = parse_double(value, key);
  else if (key == "MaxArcsRatio") cfg.max_arcs_ratio = parse_double(value, key);
  else if (key == "MaxOutputs") cfg.max_outputs = as_int("MaxOutputs");
  else if (key == "MaxInputs") cfg.max_inputs = as_int("MaxInputs");
  else if (key == "alpha") cfg.alpha = parse_double(value, key);
  else if (key == "beta") cfg.beta = parse_double(value, key);
  else if (key == "big_m") cfg.big_m = parse_double(value, key);
  else if (key == "sparsity_epsilon") cfg.sparsity_epsilon = parse_double(value, key);
  else throw ConfigError("unknown config key '" + key + "'");
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void apply_config_file(const std::string& path, DiscoveryConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file '" + path + "' line " + std::to_string(lineno) +
                        ": expected key=value");
    set_config_key(cfg, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
}

struct ConfigCli {
  std::string config_path;
  std::optional<double> dep, sloop, loop, ratio, alpha, beta, bigm, eps;
  std::optional<int> maxout, maxin;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file (Table-1 names)");
    cmd->add_option("--dep-thresh", dep, "minimum dependency measure (DepThresh)");
    cmd->add_option("--sloop-thresh", sloop, "minimum self-loop measure (SLoopThresh)");
    cmd->add_option("--loop-thresh", loop, "minimum two-loop measure (LoopThresh)");
    cmd->add_option("--max-arcs-ratio", ratio, "arc budget per task (MaxArcsRatio)");
    cmd->add_option("--max-outputs", maxout, "output-degree cap (MaxOutputs)");
    cmd->add_option("--max-inputs", maxin, "input-degree cap (MaxInputs)");
    cmd->add_option("--alpha", alpha, "self-loop objective weight");
    cmd->add_option("--beta", beta, "two-loop objective weight");
    cmd->add_option("--big-m", bigm, "punishment weight (0 = automatic)");
    cmd->add_option("--sparsity-epsilon", eps, "per-arc tie-break penalty");
  }

  DiscoveryConfig resolve() const {
    DiscoveryConfig cfg;
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (dep) cfg.dep_thresh = *dep;
    if (sloop) cfg.sloop_thresh = *sloop;
    if (loop) cfg.loop_thresh = *loop;
    if (ratio) cfg.max_arcs_ratio = *ratio;
    if (maxout) cfg.max_outputs = *maxout;
    if (maxin) cfg.max_inputs = *maxin;
    if (alpha) cfg.alpha = *alpha;
    if (beta) cfg.beta = *beta;
    if (bigm) cfg.big_m = *bigm;
    if (eps) cfg.sparsity_epsilon = *eps;
    cfg.validate();
    return cfg;
  }
};

struct LimitsCli {
  std::optional<double> time_limit;
  std::optional<std::int64_t> node_limit;
  std::optional<double> gap;

  void attach(CLI::App* cmd) {
    cmd->add_option("--time-limit", time_limit, "solver wall-time limit in seconds");
    cmd->add_option("--node-limit", node_limit, "branch-and-bound node limit");
    cmd->add_option("--gap", gap, "relative optimality gap to accept");
  }

  SolveLimits resolve() const {
    SolveLimits lim;
    if (time_limit) lim.time_limit = *time_limit;
    if (node_limit) lim.node_limit = *node_limit;
    if (gap) lim.gap_tolerance = *gap;
    lim.validate();
    return lim;
  }
};

struct Pipeline {
  EventLog log;
  RelationCounts counts;
  DependencyMeasures meas;
};

Pipeline prepare(const InputOpts& in) {
  Pipeline p;
  EventLog raw = stage("parse", [&] { return load_log(in); });
  p.log = stage("endpoints", [&] { return ensure_unique_endpoints(raw); });
  p.counts = stage("relations", [&] { return count_relations(p.log); });
  p.meas = stage("measures", [&] { return dependency_measures(p.counts); });
  return p;
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void print_quality(const QualityReport& q, const PathReport* paths) {
  std::printf("%-10s %s\n", "fim", fmt(q.fim).c_str());
  std::printf("%-10s %s\n", "prm", fmt(q.prm).c_str());
  std::printf("%-10s %s\n", "fscore", fmt(q.fscore).c_str());
  std::printf("%-10s %lld\n", "an", static_cast<long long>(q.an));
  std::printf("%-10s afe=%lld aewpr=%lld aewpo=%lld ntewpr=%lld ntewpo=%lld penalty=%s\n",
              "fitness", static_cast<long long>(q.fitness_detail.afe),
              static_cast<long long>(q.fitness_detail.aewpr),
              static_cast<long long>(q.fitness_detail.aewpo),
              static_cast<long long>(q.fitness_detail.ntewpr),
              static_cast<long long>(q.fitness_detail.ntewpo),
              fmt(q.fitness_detail.penalty).c_str());
  std::printf("%-10s matched=%lld possible=%lld\n", "precision",
              static_cast<long long>(q.precision_detail.matched),
              static_cast<long long>(q.precision_detail.possible));
  if (paths != nullptr)
    std::printf("%-10s %s\n", "paths", paths->ok ? "ok" : "FAILED");
  if (q.fim < 0.0)
    std::printf("note: penalties exceed fitting events; fim reported unclamped\n");
}

// ---------------------------------------------------------------------------
// discover

struct DiscoverArgs {
  InputOpts in;
  ConfigCli cfg;
  LimitsCli lim;
  std::string out_prefix;
  std::string export_lp_arg;
  bool strict_fim = false;
};

int run_discover(const DiscoverArgs& a) {
  Pipeline p = prepare(a.in);
  DiscoveryConfig cfg = stage("config", [&] { return a.cfg.resolve(); });
  SolveLimits lim = stage("config", [&] { return a.lim.resolve(); });
  std::string prefix = a.out_prefix.empty() ? fs::path(a.in.path).stem().string() : a.out_prefix;

  IlpModel model = stage("build", [&] { return build_model(p.meas, p.log.start, p.log.end, cfg); });

  ArtifactSink sink;
  if (!a.export_lp_arg.empty()) {
    fs::path lp_path = a.export_lp_arg == "only" ? fs::path(prefix + ".lp") : fs::path(a.export_lp_arg);
    sink.write(lp_path, export_lp(model));
    if (a.export_lp_arg == "only") {
      sink.keep();
      std::printf("wrote %s (%d variables, %zu rows); solve skipped\n", lp_path.string().c_str(),
                  model.var_count(), model.rows().size());
      return 0;
    }
  }

  Solution sol = stage("solve", [&] { return solve(model, lim); });
  if (sol.status != SolveStatus::Optimal) {
    std::fprintf(stderr, "solve: %s after %lld nodes (%.3f s)\n",
                 sol.status == SolveStatus::Infeasible ? "model is infeasible" : "limit reached",
                 static_cast<long long>(sol.stats.nodes), sol.stats.wall_seconds);
    return kExitSolver;
  }

  DependencyGraph g =
      stage("extract", [&] { return extract_graph(model, sol, p.log.alphabet.names()); });
  PathReport paths = validate_paths(g);
  QualityReport q = stage("evaluate", [&] {
    return quality(p.log, g, a.strict_fim ? FitnessMode::TraceFlags : FitnessMode::EventLocal);
  });

  sink.write(prefix + ".graph.json", graph_to_json(g));
  sink.write(prefix + ".dot", to_dot(g));
  sink.write(prefix + ".quality.json", quality_to_json(q));
  sink.keep();

  std::printf("tasks=%d arcs=%lld objective=%s nodes=%lld lp_iterations=%lld time=%.3fs\n",
              g.task_count(), static_cast<long long>(g.arc_count()),
              fmt(sol.objective_value, 9).c_str(), static_cast<long long>(sol.stats.nodes),
              static_cast<long long>(sol.stats.lp_iterations), sol.stats.wall_seconds);
  print_quality(q, &paths);
  std::printf("wrote %s.graph.json %s.dot %s.quality.json\n", prefix.c_str(), prefix.c_str(),
              prefix.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  InputOpts log_in;
  std::string graph_path;
  std::string out_path;
  bool strict_fim = false;
};

int run_evaluate(const EvaluateArgs& a) {
  Pipeline p = prepare(a.log_in);
  DependencyGraph g =
      stage("graph", [&] { return graph_from_json(read_file(a.graph_path)); });
  PathReport paths = validate_paths(g);
  QualityReport q = stage("evaluate", [&] {
    return quality(p.log, g, a.strict_fim ? FitnessMode::TraceFlags : FitnessMode::EventLocal);
  });
  if (!a.out_path.empty()) {
    ArtifactSink sink;
    sink.write(a.out_path, quality_to_json(q));
    sink.keep();
  }
  print_quality(q, &paths);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep / compare rows

struct RunRow {
  std::string method;
  std::string param;
  double value = 0.0;
  std::string status;  // optimal | infeasible | limit | error: ...
  bool produced = false;
  bool evaluated = false;
  bool path_ok = false;
  std::int64_t an = 0;
  double fim = 0.0, prm = 0.0, fscore = 0.0;
  double objective = 0.0;
  std::int64_t nodes = 0;
  double seconds = 0.0;
};

RunRow run_ilp_row(const Pipeline& p, const DiscoveryConfig& cfg, const SolveLimits& lim,
                   FitnessMode mode) {
  RunRow row;
  row.method = "ilp";
  auto t0 = std::chrono::steady_clock::now();
  try {
    cfg.validate();
    IlpModel model = build_model(p.meas, p.log.start, p.log.end, cfg);
    Solution sol = solve(model, lim);
    row.nodes = sol.stats.nodes;
    if (sol.status == SolveStatus::Infeasible) {
      row.status = "infeasible";
    } else if (sol.status == SolveStatus::LimitReached) {
      row.status = "limit";
    } else {
      row.status = "optimal";
      row.objective = sol.objective_value;
      DependencyGraph g = extract_graph(model, sol, p.log.alphabet.names());
      row.produced = true;
      row.an = g.arc_count();
      row.path_ok = validate_paths(g).ok;
      QualityReport q = quality(p.log, g, mode);
      row.fim = q.fim;
      row.prm = q.prm;
      row.fscore = q.fscore;
      row.evaluated = true;
    }
  } catch (const Error& e) {
    row.status = std::string("error: ") + e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

RunRow run_baseline_row(const Pipeline& p, double dep, double sloop, double loop,
                        FitnessMode mode) {
  RunRow row;
  row.method = "baseline";
  auto t0 = std::chrono::steady_clock::now();
  try {
    DependencyGraph g = baseline_threshold_miner(p.meas, p.log.alphabet.names(), p.log.start,
                                                 p.log.end, dep, sloop, loop);
    row.status = "optimal";
    row.produced = true;
    row.an = g.arc_count();
    row.path_ok = validate_paths(g).ok;
    QualityReport q = quality(p.log, g, mode);
    row.fim = q.fim;
    row.prm = q.prm;
    row.fscore = q.fscore;
    row.evaluated = true;
  } catch (const Error& e) {
    row.status = std::string("error: ") + e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::string row_csv(const RunRow& r, bool with_method, bool with_seconds) {
  std::ostringstream os;
  if (with_method) os << r.method << ",";
  os << r.param << "," << fmt_g(r.value) << ",";
  if (r.evaluated)
    os << r.an << "," << fmt(r.fim) << "," << fmt(r.prm) << "," << fmt(r.fscore) << ",";
  else if (r.produced)
    os << r.an << ",,,,";
  else
    os << ",,,,";
  if (with_seconds) os << fmt(r.seconds, 3) << ",";
  os << (r.produced ? (r.path_ok ? "ok" : "failed") : "") << "," << r.status;
  return os.str();
}

json row_json(const RunRow& r) {
  json j;
  j["method"] = r.method;
  j["param"] = r.param;
  j["value"] = r.value;
  j["status"] = r.status;
  if (r.produced) {
    j["an"] = r.an;
    j["path_ok"] = r.path_ok;
  }
  if (r.evaluated) {
    j["fim"] = r.fim;
    j["prm"] = r.prm;
    j["fscore"] = r.fscore;
  }
  if (r.method == "ilp" && r.status == "optimal") {
    j["objective"] = r.objective;
    j["nodes"] = r.nodes;
  }
  return j;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  InputOpts in;
  ConfigCli cfg;
  LimitsCli lim;
  std::string param;
  std::string values_arg;
  std::string out_prefix;
  bool strict_fim = false;
};

std::vector<double> parse_values(const std::string& arg) {
  std::vector<double> values;
  std::string token;
  std::istringstream ss(arg);
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    values.push_back(parse_double(token, "--values"));
  }
  if (values.empty()) throw ConfigError("--values: expected a non-empty comma-separated list");
  return values;
}

int run_sweep(const SweepArgs& a) {
  Pipeline p = prepare(a.in);
  DiscoveryConfig base = stage("config", [&] { return a.cfg.resolve(); });
  SolveLimits lim = stage("config", [&] { return a.lim.resolve(); });
  std::vector<double> values = stage("config", [&] { return parse_values(a.values_arg); });
  FitnessMode mode = a.strict_fim ? FitnessMode::TraceFlags : FitnessMode::EventLocal;
  std::string prefix = a.out_prefix.empty() ? fs::path(a.in.path).stem().string() + ".sweep"
                                            : a.out_prefix;

  std::vector<RunRow> rows;
  for (double v : values) {
    DiscoveryConfig cfg = base;
    try {
      set_config_key(cfg, a.param, fmt_g(v));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("sweep: ") + e.what());
    }
    RunRow row = run_ilp_row(p, cfg, lim, mode);
    row.param = a.param;
    row.value = v;
    rows.push_back(row);
  }

  std::ostringstream csv;
  csv << "param,value,an,fim,prm,fscore,solve_seconds,path_ok,status\n";
  for (const RunRow& r : rows) csv << row_csv(r, false, true) << "\n";

  json report;
  report["input"] = a.in.path;
  report["param"] = a.param;
  report["rows"] = json::array();
  for (const RunRow& r : rows) {
    json j = row_json(r);
    j["seconds"] = r.seconds;
    report["rows"].push_back(j);
  }

  ArtifactSink sink;
  sink.write(prefix + ".csv", csv.str());
  sink.write(prefix + ".json", report.dump(2) + "\n");
  sink.keep();
  std::fputs(csv.str().c_str(), stdout);
  std::printf("wrote %s.csv %s.json\n", prefix.c_str(), prefix.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  InputOpts in;
  ConfigCli cfg;
  LimitsCli lim;
  std::string out_prefix;
  bool strict_fim = false;
};

json method_summary(const std::vector<RunRow>& rows) {
  json s;
  const RunRow* best = nullptr;
  for (const RunRow& r : rows)
    if (r.evaluated && (best == nullptr || r.fscore > best->fscore)) best = &r;
  if (best != nullptr) {
    s["best_fscore"] = {{"param", best->param}, {"value", best->value},
                        {"fscore", best->fscore}, {"an", best->an}};
  } else {
    s["best_fscore"] = nullptr;
  }
  json floors = json::object();
  for (double floor : {0.6, 0.7, 0.8, 0.9}) {
    const RunRow* pick = nullptr;
    for (const RunRow& r : rows)
      if (r.evaluated && r.fscore >= floor - 1e-12 && (pick == nullptr || r.an < pick->an))
        pick = &r;
    std::string key = fmt(floor, 1);
    if (pick != nullptr)
      floors[key] = {{"an", pick->an}, {"param", pick->param}, {"value", pick->value},
                     {"fscore", pick->fscore}};
    else
      floors[key] = nullptr;
  }
  s["min_an_at_fscore_floor"] = floors;
  std::int64_t produced = 0, failed = 0;
  for (const RunRow& r : rows)
    if (r.produced) {
      ++produced;
      if (!r.path_ok) ++failed;
    }
  s["path_failure_pct"] =
      produced == 0 ? 0.0 : 100.0 * static_cast<double>(failed) / static_cast<double>(produced);
  return s;
}

int run_compare(const CompareArgs& a) {
  Pipeline p = prepare(a.in);
  DiscoveryConfig base = stage("config", [&] { return a.cfg.resolve(); });
  SolveLimits lim = stage("config", [&] { return a.lim.resolve(); });
  FitnessMode mode = a.strict_fim ? FitnessMode::TraceFlags : FitnessMode::EventLocal;
  std::string prefix = a.out_prefix.empty() ? fs::path(a.in.path).stem().string() + ".compare"
                                            : a.out_prefix;

  std::vector<RunRow> ilp_rows;
  for (int i = 21; i >= 11; --i) {
    double ratio = static_cast<double>(i) / 10.0;
    DiscoveryConfig cfg = base;
    cfg.max_arcs_ratio = ratio;
    RunRow row = run_ilp_row(p, cfg, lim, mode);
    row.param = "MaxArcsRatio";
    row.value = ratio;
    ilp_rows.push_back(row);
  }
  std::vector<RunRow> base_rows;
  for (int i = 0; i < 20; ++i) {
    double thresh = static_cast<double>(i) / 20.0;
    RunRow row = run_baseline_row(p, thresh, base.sloop_thresh, base.loop_thresh, mode);
    row.param = "DepThresh";
    row.value = thresh;
    base_rows.push_back(row);
  }

  std::ostringstream csv;
  csv << "method,param,value,an,fim,prm,fscore,path_ok,status\n";
  for (const RunRow& r : ilp_rows) csv << row_csv(r, true, false) << "\n";
  for (const RunRow& r : base_rows) csv << row_csv(r, true, false) << "\n";

  json report;
  report["input"] = a.in.path;
  report["rows"] = json::array();
  for (const RunRow& r : ilp_rows) report["rows"].push_back(row_json(r));
  for (const RunRow& r : base_rows) report["rows"].push_back(row_json(r));
  report["summary"] = {{"ilp", method_summary(ilp_rows)}, {"baseline", method_summary(base_rows)}};

  ArtifactSink sink;
  sink.write(prefix + ".csv", csv.str());
  sink.write(prefix + ".json", report.dump(2) + "\n");
  sink.keep();

  std::fputs(csv.str().c_str(), stdout);
  std::printf("summary: %s\n", report["summary"].dump().c_str());
  std::printf("wrote %s.csv %s.json\n", prefix.c_str(), prefix.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  int tasks = 8;
  std::string blocks_arg = "sequence";
  double loop_prob = 0.0;
  int max_repeats = 4;
  std::int64_t traces = 100;
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string xes_path;
};

std::vector<BlockKind> parse_blocks(const std::string& arg) {
  std::vector<BlockKind> blocks;
  std::string token;
  std::istringstream ss(arg);
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    if (token == "sequence" || token == "seq") blocks.push_back(BlockKind::Sequence);
    else if (token == "choice" || token == "xor") blocks.push_back(BlockKind::Choice);
    else if (token == "concurrency" || token == "conc" || token == "and")
      blocks.push_back(BlockKind::Concurrency);
    else throw ConfigError("--blocks: unknown block kind '" + token + "'");
  }
  if (blocks.empty()) throw ConfigError("--blocks: expected a non-empty list");
  return blocks;
}

int run_synth(const SynthArgs& a) {
  SyntheticSpec spec;
  spec.alphabet_size = a.tasks;
  spec.blocks = parse_blocks(a.blocks_arg);
  spec.loop_probability = a.loop_prob;
  spec.max_block_repeats = a.max_repeats;
  EventLog log = stage("generate", [&] {
    return generate_synthetic_log(spec, a.traces, a.noise, a.seed);
  });

  ArtifactSink sink;
  sink.write(a.out_path, log_to_json(log));
  if (!a.xes_path.empty()) {
    std::ostringstream xes;
    write_xes(log, xes);
    sink.write(a.xes_path, xes.str());
  }
  sink.keep();
  std::printf("generated %lld traces (%zu distinct variants, %d tasks) -> %s\n",
              static_cast<long long>(log.total_traces()), log.traces.size(),
              log.alphabet.size(), a.out_path.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// export-lp / dumps

struct ExportArgs {
  InputOpts in;
  ConfigCli cfg;
  std::string out_path;
};

int run_export_lp(const ExportArgs& a) {
  Pipeline p = prepare(a.in);
  DiscoveryConfig cfg = stage("config", [&] { return a.cfg.resolve(); });
  IlpModel model = stage("build", [&] { return build_model(p.meas, p.log.start, p.log.end, cfg); });
  std::string text = export_lp(model);
  if (a.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    ArtifactSink sink;
    sink.write(a.out_path, text);
    sink.keep();
    std::printf("wrote %s (%d variables, %zu rows)\n", a.out_path.c_str(), model.var_count(),
                model.rows().size());
  }
  return 0;
}

struct DumpArgs {
  InputOpts in;
  std::string out_path;
};

int run_dump(const DumpArgs& a, bool measures) {
  Pipeline p = prepare(a.in);
  std::string text = measures ? measures_to_json(p.meas, p.log.alphabet)
                              : relations_to_json(p.counts, p.log.alphabet);
  if (a.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    ArtifactSink sink;
    sink.write(a.out_path, text);
    sink.keep();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dependency-graph discovery via exact ILP optimization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "depmine 0.1.0");

  DiscoverArgs discover;
  CLI::App* cmd_discover = app.add_subcommand("discover", "mine an optimal dependency graph");
  discover.in.attach(cmd_discover);
  discover.cfg.attach(cmd_discover);
  discover.lim.attach(cmd_discover);
  cmd_discover->add_option("--out-prefix", discover.out_prefix,
                           "artifact prefix (default: input stem)");
  cmd_discover->add_option("--export-lp", discover.export_lp_arg,
                           "write the LP file to PATH, or 'only' to skip solving");
  cmd_discover->add_flag("--fim-strict-pseudocode", discover.strict_fim,
                         "use trace-persistent replay flags for FiM");

  EvaluateArgs evaluate;
  CLI::App* cmd_evaluate = app.add_subcommand("evaluate", "score a graph against a log");
  cmd_evaluate->add_option("--log", evaluate.log_in.path, "event log")->required();
  cmd_evaluate->add_option("--format", evaluate.log_in.format, "log format: auto|xes|csv|json");
  cmd_evaluate->add_option("--case-col", evaluate.log_in.csv.case_column, "CSV case-id column");
  cmd_evaluate->add_option("--activity-col", evaluate.log_in.csv.activity_column,
                           "CSV activity column");
  cmd_evaluate->add_option("--order-col", evaluate.log_in.csv.order_column, "CSV ordering column");
  cmd_evaluate->add_option("--graph", evaluate.graph_path, "dependency graph JSON")->required();
  cmd_evaluate->add_option("--out", evaluate.out_path, "write the quality report JSON here");
  cmd_evaluate->add_flag("--fim-strict-pseudocode", evaluate.strict_fim,
                         "use trace-persistent replay flags for FiM");

  CompareArgs compare;
  CLI::App* cmd_compare =
      app.add_subcommand("compare", "ILP vs threshold baseline over matched grids");
  compare.in.attach(cmd_compare);
  compare.cfg.attach(cmd_compare);
  compare.lim.attach(cmd_compare);
  cmd_compare->add_option("--out-prefix", compare.out_prefix,
                          "report prefix (default: input stem + .compare)");
  cmd_compare->add_flag("--fim-strict-pseudocode", compare.strict_fim,
                        "use trace-persistent replay flags for FiM");

  SweepArgs sweep;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "one discovery per parameter value");
  sweep.in.attach(cmd_sweep);
  sweep.cfg.attach(cmd_sweep);
  sweep.lim.attach(cmd_sweep);
  cmd_sweep->add_option("--param", sweep.param, "config key to sweep (Table-1 name)")->required();
  cmd_sweep->add_option("--values", sweep.values_arg, "comma-separated values")->required();
  cmd_sweep->add_option("--out-prefix", sweep.out_prefix,
                        "report prefix (default: input stem + .sweep)");
  cmd_sweep->add_flag("--fim-strict-pseudocode", sweep.strict_fim,
                      "use trace-persistent replay flags for FiM");

  SynthArgs synth;
  CLI::App* cmd_synth = app.add_subcommand("synth", "generate a synthetic log");
  cmd_synth->add_option("--tasks", synth.tasks, "alphabet size (endpoints excluded)");
  cmd_synth->add_option("--blocks", synth.blocks_arg,
                        "block kinds: sequence|choice|concurrency, comma-separated");
  cmd_synth->add_option("--loop-prob", synth.loop_prob, "block repeat probability");
  cmd_synth->add_option("--max-repeats", synth.max_repeats, "repeat cap per block");
  cmd_synth->add_option("--traces", synth.traces, "number of traces");
  cmd_synth->add_option("--noise", synth.noise, "per-event noise rate in [0,1]");
  cmd_synth->add_option("--seed", synth.seed, "RNG seed");
  cmd_synth->add_option("--out", synth.out_path, "canonical JSON log path")->required();
  cmd_synth->add_option("--xes", synth.xes_path, "also write an XES copy here");

  ExportArgs export_lp_args;
  CLI::App* cmd_export = app.add_subcommand("export-lp", "emit the model in LP text format");
  export_lp_args.in.attach(cmd_export);
  export_lp_args.cfg.attach(cmd_export);
  cmd_export->add_option("--out", export_lp_args.out_path, "LP file path (default: stdout)");

  DumpArgs relations_dump;
  CLI::App* cmd_relations = app.add_subcommand("relations-dump", "dump relation counts as JSON");
  relations_dump.in.attach(cmd_relations);
  cmd_relations->add_option("--out", relations_dump.out_path, "output path (default: stdout)");

  DumpArgs measures_dump;
  CLI::App* cmd_measures = app.add_subcommand("measures-dump", "dump dependency measures as JSON");
  measures_dump.in.attach(cmd_measures);
  cmd_measures->add_option("--out", measures_dump.out_path, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (app.got_subcommand(cmd_discover)) return run_discover(discover);
    if (app.got_subcommand(cmd_evaluate)) return run_evaluate(evaluate);
    if (app.got_subcommand(cmd_compare)) return run_compare(compare);
    if (app.got_subcommand(cmd_sweep)) return run_sweep(sweep);
    if (app.got_subcommand(cmd_synth)) return run_synth(synth);
    if (app.got_subcommand(cmd_export)) return run_export_lp(export_lp_args);
    if (app.got_subcommand(cmd_relations)) return run_dump(relations_dump, false);
    if (app.got_subcommand(cmd_measures)) return run_dump(measures_dump, true);
    std::fprintf(stderr, "error: no subcommand\n");
    return kExitInput;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const GenerateError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const Error& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
}
