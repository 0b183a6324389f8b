// End-to-end checks of the command-line tool: every subcommand is spawned as a
// real process and judged by exit code, console output, and the artifacts it
// leaves (or cleans up) on disk.
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "depmine/dep_graph.hpp"
#include "depmine/event_log.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;  // stdout and stderr combined
};

// Runs the CLI with `dir` as working directory so relative artifact prefixes
// land in the per-test scratch space.
CliResult run_cli(const fs::path& dir, const std::string& args) {
  fs::path capture = dir / ".cli_capture";
  std::string cmd = "cd '" + dir.string() + "' && '" + DEPMINE_CLI_PATH + "' " + args + " > '" +
                    capture.string() + "' 2>&1";
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(capture, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  std::error_code ec;
  fs::remove(capture, ec);
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("depmine_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

int count_lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

// ⟨s,a,b,e⟩ chain log with natural endpoints; discovery yields three arcs.
void write_chain_log(const fs::path& p) {
  spit(p, depmine::log_to_json(testsup::make_log({{"s a b e", 5}})));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version and argument errors") {
  TempDir tmp;
  CliResult v = run_cli(tmp.path, "--version");
  CHECK(v.code == 0);
  CHECK(contains(v.out, "depmine 0.1.0"));

  CliResult h = run_cli(tmp.path, "--help");
  CHECK(h.code == 0);
  CHECK(contains(h.out, "discover"));
  CHECK(contains(h.out, "sweep"));

  CHECK(run_cli(tmp.path, "frobnicate in.json").code == 2);
  CHECK(run_cli(tmp.path, "discover").code == 2);                 // missing input
  CHECK(run_cli(tmp.path, "sweep in.json --param DepThresh").code == 2);  // missing --values
}

TEST_CASE("synth, discover, evaluate round trip") {
  TempDir tmp;
  CliResult synth = run_cli(
      tmp.path, "synth --tasks 4 --blocks sequence --traces 30 --seed 7 --out log.json --xes log.xes");
  REQUIRE(synth.code == 0);
  CHECK(contains(synth.out, "generated 30 traces"));
  REQUIRE(fs::exists(tmp.file("log.json")));
  REQUIRE(fs::exists(tmp.file("log.xes")));

  depmine::EventLog log = depmine::log_from_json(slurp(tmp.file("log.json")));
  CHECK(log.traces.size() == 1);  // a pure sequence has one variant
  CHECK(log.total_traces() == 30);

  CliResult disc = run_cli(tmp.path, "discover log.json --out-prefix run");
  REQUIRE(disc.code == 0);
  CHECK(contains(disc.out, "tasks=4 arcs=3"));
  CHECK(contains(disc.out, "wrote run.graph.json run.dot run.quality.json"));
  REQUIRE(fs::exists(tmp.file("run.graph.json")));
  REQUIRE(fs::exists(tmp.file("run.dot")));
  REQUIRE(fs::exists(tmp.file("run.quality.json")));

  depmine::DependencyGraph g = depmine::graph_from_json(slurp(tmp.file("run.graph.json")));
  CHECK(g.task_count() == 4);
  CHECK(g.arc_count() == 3);
  CHECK(depmine::validate_paths(g).ok);

  json q = json::parse(slurp(tmp.file("run.quality.json")));
  CHECK(q["fim"].get<double>() == doctest::Approx(1.0));
  CHECK(q["prm"].get<double>() == doctest::Approx(1.0));
  CHECK(q["an"].get<int>() == 3);

  CliResult eval = run_cli(tmp.path, "evaluate --log log.json --graph run.graph.json --out q.json");
  REQUIRE(eval.code == 0);
  CHECK(contains(eval.out, "fscore"));
  CHECK(slurp(tmp.file("q.json")) == slurp(tmp.file("run.quality.json")));

  // Same log through the XES reader must give the same discovery.
  CliResult disc2 = run_cli(tmp.path, "discover log.xes --out-prefix xr");
  REQUIRE(disc2.code == 0);
  CHECK(slurp(tmp.file("xr.quality.json")) == slurp(tmp.file("run.quality.json")));
}

TEST_CASE("xes and csv inputs with custom columns") {
  TempDir tmp;
  std::string receipt = std::string(DEPMINE_DATA_DIR) + "/receipt.xes";

  CliResult rel = run_cli(tmp.path, "relations-dump '" + receipt + "'");
  REQUIRE(rel.code == 0);
  CHECK(contains(rel.out, "\"direct\""));
  CHECK(contains(rel.out, "register request"));

  CliResult meas = run_cli(tmp.path, "measures-dump '" + receipt + "' --out m.json");
  REQUIRE(meas.code == 0);
  json m = json::parse(slurp(tmp.file("m.json")));
  CHECK(m["tasks"].size() == 10);
  CHECK(m.contains("arc"));
  CHECK(m.contains("self_loop"));
  CHECK(m.contains("two_loop"));

  spit(tmp.file("log.csv"),
       "case_id,act,ts\n"
       "c1,open,1\n"
       "c1,work,2\n"
       "c1,close,3\n"
       "c2,open,1\n"
       "c2,close,2\n");
  CHECK(run_cli(tmp.path,
                "measures-dump log.csv --case-col case_id --activity-col act --order-col ts")
            .code == 0);
  CliResult bad_cols = run_cli(tmp.path, "measures-dump log.csv");
  CHECK(bad_cols.code == 2);
  CHECK(contains(bad_cols.out, "error:"));

  // Unknown extension needs an explicit --format.
  fs::copy_file(receipt, tmp.file("receipt.dat"));
  CliResult no_fmt = run_cli(tmp.path, "relations-dump receipt.dat");
  CHECK(no_fmt.code == 2);
  CHECK(contains(no_fmt.out, "cannot infer"));
  CHECK(run_cli(tmp.path, "relations-dump receipt.dat --format xes").code == 0);
}

TEST_CASE("config file and flag precedence") {
  TempDir tmp;
  write_chain_log(tmp.file("log.json"));
  spit(tmp.file("grid.cfg"),
       "# discovery grid\n"
       "\n"
       "MaxArcsRatio = 1.3\n"
       "DepThresh=0.2\n");

  REQUIRE(run_cli(tmp.path, "export-lp log.json --config grid.cfg --out a.lp").code == 0);
  REQUIRE(run_cli(tmp.path, "export-lp log.json --max-arcs-ratio 1.3 --dep-thresh 0.2 --out b.lp")
              .code == 0);
  CHECK(slurp(tmp.file("a.lp")) == slurp(tmp.file("b.lp")));

  // A flag wins over the config file.
  REQUIRE(run_cli(tmp.path, "export-lp log.json --config grid.cfg --max-arcs-ratio 2 --out c.lp")
              .code == 0);
  REQUIRE(run_cli(tmp.path, "export-lp log.json --dep-thresh 0.2 --max-arcs-ratio 2 --out d.lp")
              .code == 0);
  CHECK(slurp(tmp.file("c.lp")) == slurp(tmp.file("d.lp")));
  CHECK(slurp(tmp.file("c.lp")) != slurp(tmp.file("a.lp")));

  spit(tmp.file("bad_key.cfg"), "Bogus=1\n");
  CliResult bad_key = run_cli(tmp.path, "export-lp log.json --config bad_key.cfg");
  CHECK(bad_key.code == 2);
  CHECK(contains(bad_key.out, "unknown config key"));

  spit(tmp.file("bad_line.cfg"), "MaxArcsRatio\n");
  CliResult bad_line = run_cli(tmp.path, "export-lp log.json --config bad_line.cfg");
  CHECK(bad_line.code == 2);
  CHECK(contains(bad_line.out, "expected key=value"));

  CliResult to_stdout = run_cli(tmp.path, "export-lp log.json");
  CHECK(to_stdout.code == 0);
  CHECK(contains(to_stdout.out, "Maximize"));
  CHECK(contains(to_stdout.out, "End"));

  CliResult missing = run_cli(tmp.path, "discover nope.json");
  CHECK(missing.code == 2);
  CHECK(contains(missing.out, "cannot open"));
}

TEST_CASE("discover export-lp modes and artifact hygiene") {
  TempDir tmp;
  write_chain_log(tmp.file("log.json"));

  CliResult only = run_cli(tmp.path, "discover log.json --out-prefix pre --export-lp only");
  REQUIRE(only.code == 0);
  CHECK(contains(only.out, "solve skipped"));
  CHECK(fs::exists(tmp.file("pre.lp")));
  CHECK_FALSE(fs::exists(tmp.file("pre.graph.json")));

  REQUIRE(run_cli(tmp.path, "export-lp log.json --out ref.lp").code == 0);
  CHECK(slurp(tmp.file("pre.lp")) == slurp(tmp.file("ref.lp")));

  CliResult full = run_cli(tmp.path, "discover log.json --export-lp side.lp --out-prefix run2");
  REQUIRE(full.code == 0);
  CHECK(slurp(tmp.file("side.lp")) == slurp(tmp.file("ref.lp")));
  CHECK(fs::exists(tmp.file("run2.graph.json")));

  // A failed solve must remove everything it already wrote.
  CliResult failed =
      run_cli(tmp.path, "discover log.json --max-inputs 0 --export-lp gone.lp --out-prefix run3");
  CHECK(failed.code == 1);
  CHECK(contains(failed.out, "infeasible"));
  CHECK_FALSE(fs::exists(tmp.file("gone.lp")));
  CHECK_FALSE(fs::exists(tmp.file("run3.graph.json")));
}

TEST_CASE("solver exits distinguish infeasible and limit") {
  TempDir tmp;
  write_chain_log(tmp.file("log.json"));

  CliResult infeasible = run_cli(tmp.path, "discover log.json --max-inputs 0");
  CHECK(infeasible.code == 1);
  CHECK(contains(infeasible.out, "model is infeasible"));

  // A single-pass chain with a harsh threshold fractions the root relaxation,
  // so a one-node budget cannot prove the seed incumbent optimal.
  spit(tmp.file("tiny.json"), depmine::log_to_json(testsup::make_log({{"s a e", 1}})));
  CliResult limited = run_cli(tmp.path, "discover tiny.json --dep-thresh 0.9 --node-limit 1");
  CHECK(limited.code == 1);
  CHECK(contains(limited.out, "limit reached"));
}

TEST_CASE("sweep writes schema-stable reports") {
  TempDir tmp;
  write_chain_log(tmp.file("log.json"));

  CliResult sweep =
      run_cli(tmp.path, "sweep log.json --param MaxArcsRatio --values 2.0,1.1 --out-prefix sw");
  REQUIRE(sweep.code == 0);

  std::string csv = slurp(tmp.file("sw.csv"));
  CHECK(csv.rfind("param,value,an,fim,prm,fscore,solve_seconds,path_ok,status\n", 0) == 0);
  CHECK(count_lines(csv) == 3);
  CHECK(contains(csv, "MaxArcsRatio,2,3,1.000000,1.000000,1.000000,"));
  CHECK(contains(csv, "MaxArcsRatio,1.1,3,1.000000,1.000000,1.000000,"));
  CHECK(contains(csv, ",ok,optimal"));
  CHECK(contains(sweep.out, csv));  // the CSV is echoed to stdout

  json report = json::parse(slurp(tmp.file("sw.json")));
  REQUIRE(report["rows"].size() == 2);
  CHECK(report["param"] == "MaxArcsRatio");
  CHECK(report["rows"][0]["status"] == "optimal");
  CHECK(report["rows"][0].contains("objective"));
  CHECK(report["rows"][0].contains("seconds"));
  CHECK(report["rows"][1]["value"].get<double>() == doctest::Approx(1.1));

  CliResult bad = run_cli(tmp.path, "sweep log.json --param Bogus --values 1 --out-prefix nope");
  CHECK(bad.code == 2);
  CHECK(contains(bad.out, "unknown config key"));
  CHECK_FALSE(fs::exists(tmp.file("nope.csv")));
}

TEST_CASE("compare reports are deterministic") {
  TempDir tmp;
  write_chain_log(tmp.file("log.json"));

  CliResult first = run_cli(tmp.path, "compare log.json --out-prefix c1");
  REQUIRE(first.code == 0);
  CHECK(contains(first.out, "summary:"));

  std::string csv = slurp(tmp.file("c1.csv"));
  CHECK(csv.rfind("method,param,value,an,fim,prm,fscore,path_ok,status\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + 11 + 20);
  CHECK(contains(csv, "ilp,MaxArcsRatio,2.1,"));
  CHECK(contains(csv, "ilp,MaxArcsRatio,1.1,3,1.000000,1.000000,1.000000,ok,optimal"));
  CHECK(contains(csv, "baseline,DepThresh,0,"));
  CHECK(contains(csv, "baseline,DepThresh,0.95,"));

  json report = json::parse(slurp(tmp.file("c1.json")));
  CHECK(report["summary"]["ilp"]["best_fscore"]["fscore"].get<double>() == doctest::Approx(1.0));
  CHECK(report["summary"]["ilp"]["path_failure_pct"].get<double>() == 0.0);
  CHECK(report["summary"].contains("baseline"));

  // No wall-clock column, so a rerun reproduces both reports byte for byte.
  REQUIRE(run_cli(tmp.path, "compare log.json --out-prefix c2").code == 0);
  CHECK(slurp(tmp.file("c2.csv")) == csv);
  CHECK(slurp(tmp.file("c2.json")) == slurp(tmp.file("c1.json")));
}

TEST_CASE("strict fim flag switches replay mode") {
  TempDir tmp;
  spit(tmp.file("log.json"), depmine::log_to_json(testsup::make_log({{"s a b e", 1}})));
  depmine::DependencyGraph g =
      testsup::make_graph({"s", "a", "b", "e"}, {"s b", "b e", "a a", "a e"});
  spit(tmp.file("g.json"), depmine::graph_to_json(g));

  REQUIRE(run_cli(tmp.path, "evaluate --log log.json --graph g.json --out q1.json").code == 0);
  json local = json::parse(slurp(tmp.file("q1.json")));
  CHECK(local["fim"].get<double>() == doctest::Approx(0.5));
  CHECK(local["fitness"]["afe"].get<int>() == 3);

  REQUIRE(run_cli(tmp.path,
                  "evaluate --log log.json --graph g.json --fim-strict-pseudocode --out q2.json")
              .code == 0);
  json strict = json::parse(slurp(tmp.file("q2.json")));
  CHECK(strict["fim"].get<double>() == doctest::Approx(0.0));
  CHECK(strict["fitness"]["afe"].get<int>() == 1);
}

TEST_CASE("evaluation mismatch is an internal error") {
  TempDir tmp;
  spit(tmp.file("log.json"), depmine::log_to_json(testsup::make_log({{"s a e", 3}})));
  spit(tmp.file("g.json"), depmine::graph_to_json(testsup::make_graph({"s", "e"}, {"s e"})));
  CliResult r = run_cli(tmp.path, "evaluate --log log.json --graph g.json");
  CHECK(r.code == 3);
  CHECK(contains(r.out, "internal error"));
}

TEST_CASE("synth input validation") {
  TempDir tmp;
  CliResult tiny = run_cli(tmp.path, "synth --tasks 1 --out bad.json");
  CHECK(tiny.code == 2);
  CHECK_FALSE(fs::exists(tmp.file("bad.json")));

  CHECK(run_cli(tmp.path, "synth --tasks 4 --noise 1.5 --out bad.json").code == 2);
  CliResult blocks = run_cli(tmp.path, "synth --tasks 4 --blocks nope --out bad.json");
  CHECK(blocks.code == 2);
  CHECK(contains(blocks.out, "unknown block kind"));
  CHECK(run_cli(tmp.path, "synth --tasks 4").code == 2);  // --out is required
  CHECK_FALSE(fs::exists(tmp.file("bad.json")));
}

}  // TEST_SUITE
