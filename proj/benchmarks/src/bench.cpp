// Microbenchmarks for the discovery pipeline: log parsing, relation counting,
// model construction, LP relaxation, exact solve, and replay scoring.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "depmine/eval.hpp"
#include "depmine/event_log.hpp"
#include "depmine/ilp_model.hpp"
#include "depmine/measures.hpp"
#include "depmine/relations.hpp"
#include "depmine/simplex.hpp"
#include "depmine/solver.hpp"
#include "depmine/synthetic.hpp"
#include "depmine/xes.hpp"

namespace {

using namespace depmine;

// One log per alphabet size, built lazily and reused across iterations so the
// benchmarks measure the pipeline stage, not the generator.
const EventLog& log_for(int alphabet) {
  static std::map<int, EventLog> cache;
  auto it = cache.find(alphabet);
  if (it == cache.end()) {
    SyntheticSpec spec;
    spec.alphabet_size = alphabet;
    spec.blocks = {BlockKind::Choice, BlockKind::Sequence, BlockKind::Concurrency,
                   BlockKind::Sequence};
    spec.loop_probability = 0.2;
    spec.max_block_repeats = 2;
    it = cache.emplace(alphabet, generate_synthetic_log(spec, 200, 0.05, 42)).first;
  }
  return it->second;
}

IlpModel model_for(int alphabet, double ratio = 2.0) {
  const EventLog& log = log_for(alphabet);
  DependencyMeasures meas = dependency_measures(count_relations(log));
  DiscoveryConfig cfg;
  cfg.max_arcs_ratio = ratio;
  return build_model(meas, log.start, log.end, cfg);
}

void BM_parse_xes(benchmark::State& state) {
  std::ostringstream xes;
  write_xes(log_for(static_cast<int>(state.range(0))), xes);
  std::string text = xes.str();
  for (auto _ : state) {
    EventLog log = parse_xes_text(text);
    benchmark::DoNotOptimize(log.traces.size());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_parse_xes)->Arg(8)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_count_relations(benchmark::State& state) {
  const EventLog& log = log_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    RelationCounts counts = count_relations(log);
    benchmark::DoNotOptimize(counts.direct(0, 0));
  }
}
BENCHMARK(BM_count_relations)->Arg(8)->Arg(18)->Unit(benchmark::kMicrosecond);

void BM_dependency_measures(benchmark::State& state) {
  RelationCounts counts = count_relations(log_for(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    DependencyMeasures meas = dependency_measures(counts);
    benchmark::DoNotOptimize(meas.arc(0, 0));
  }
}
BENCHMARK(BM_dependency_measures)->Arg(8)->Arg(18)->Unit(benchmark::kMicrosecond);

void BM_build_model(benchmark::State& state) {
  const EventLog& log = log_for(static_cast<int>(state.range(0)));
  DependencyMeasures meas = dependency_measures(count_relations(log));
  for (auto _ : state) {
    IlpModel model = build_model(meas, log.start, log.end, DiscoveryConfig{});
    benchmark::DoNotOptimize(model.var_count());
  }
}
BENCHMARK(BM_build_model)->Arg(8)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_lp_relaxation(benchmark::State& state) {
  IlpModel model = model_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    LpResult lp = lp_relax_solve(model);
    benchmark::DoNotOptimize(lp.objective);
  }
}
BENCHMARK(BM_lp_relaxation)->Arg(8)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_solve(benchmark::State& state) {
  IlpModel model = model_for(static_cast<int>(state.range(0)), 1.5);
  for (auto _ : state) {
    Solution sol = solve(model);
    benchmark::DoNotOptimize(sol.objective_value);
  }
}
BENCHMARK(BM_solve)->Arg(8)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_fitness(benchmark::State& state) {
  const EventLog& log = log_for(static_cast<int>(state.range(0)));
  IlpModel model = model_for(static_cast<int>(state.range(0)));
  Solution sol = solve(model);
  DependencyGraph g = extract_graph(model, sol, log.alphabet.names());
  for (auto _ : state) {
    FitnessReport r = fitness(log, g);
    benchmark::DoNotOptimize(r.fim);
  }
}
BENCHMARK(BM_fitness)->Arg(8)->Arg(18)->Unit(benchmark::kMicrosecond);

void BM_precision(benchmark::State& state) {
  const EventLog& log = log_for(static_cast<int>(state.range(0)));
  IlpModel model = model_for(static_cast<int>(state.range(0)));
  Solution sol = solve(model);
  DependencyGraph g = extract_graph(model, sol, log.alphabet.names());
  for (auto _ : state) {
    PrecisionReport r = precision(log, g);
    benchmark::DoNotOptimize(r.prm);
  }
}
BENCHMARK(BM_precision)->Arg(8)->Arg(18)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
