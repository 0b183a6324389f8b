#include <doctest.h>

#include "depmine/errors.hpp"
#include "depmine/eval.hpp"
#include "support.hpp"

using namespace depmine;

TEST_SUITE("eval") {

TEST_CASE("perfect replay scores one across the board") {
  EventLog log = testsup::make_log({{"s a e", 10}});
  DependencyGraph g = testsup::make_graph({"s", "a", "e"}, {"s a", "a e"});
  QualityReport q = quality(log, g);
  CHECK(q.fim == 1.0);
  CHECK(q.prm == 1.0);
  CHECK(q.fscore == 1.0);
  CHECK(q.an == 2);
  CHECK(q.fitness_detail.afe == 30);
  CHECK(q.fitness_detail.aewpr == 0);
  CHECK(q.fitness_detail.aewpo == 0);
  CHECK(q.fitness_detail.penalty == 0.0);
  CHECK(q.precision_detail.matched == 3);
  CHECK(q.precision_detail.possible == 3);
}

TEST_CASE("pre-requisite violation: counters match the hand count") {
  // a's only prerequisite is itself, so its single occurrence pre-violates
  // but still satisfies its post-requisite through the later e.
  EventLog log = testsup::make_log({{"s a e", 1}});
  DependencyGraph g = testsup::make_graph({"s", "a", "e"}, {"s e", "a a", "a e"});
  FitnessReport r = fitness(log, g);
  CHECK(r.afe == 2);
  CHECK(r.aewpr == 1);
  CHECK(r.aewpo == 0);
  CHECK(r.ntewpr == 1);
  CHECK(r.ntewpo == 0);
  CHECK(r.nel == 3);
  CHECK(r.ntl == 1);
  CHECK(r.penalty == 1.0);  // 1/(1-1+1)
  CHECK(r.fim == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("trace-flag replay stops counting after the first violation") {
  // Event-local: a pre-violates (nothing provides it), later events recover.
  // Trace-flag: everything after the violation stops counting as fitting.
  EventLog log = testsup::make_log({{"s a b e", 1}});
  DependencyGraph g = testsup::make_graph({"s", "a", "b", "e"}, {"s b", "b e", "a a", "a e"});
  FitnessReport local = fitness(log, g, FitnessMode::EventLocal);
  FitnessReport strict = fitness(log, g, FitnessMode::TraceFlags);
  CHECK(local.fim == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(strict.fim == doctest::Approx(0.0).epsilon(1e-12));
  // Violation counters are shared between the modes.
  CHECK(local.aewpr == strict.aewpr);
  CHECK(local.aewpo == strict.aewpo);
  CHECK(local.afe == 3);
  CHECK(strict.afe == 1);
}

TEST_CASE("fitness can go negative and stays unclamped") {
  EventLog log = testsup::make_log({{"s x y e", 1}});
  DependencyGraph g = testsup::make_graph({"s", "x", "y", "e"}, {"s e", "x x", "y y"});
  FitnessReport r = fitness(log, g);
  // x and y violate both directions; afe=2, penalty=2/1+2/1=... hand count:
  // aewpr=2 (x,y), aewpo=2 (x,y), ntewpr=ntewpo=1.
  CHECK(r.afe == 2);
  CHECK(r.aewpr == 2);
  CHECK(r.aewpo == 2);
  CHECK(r.penalty == 4.0);
  CHECK(r.fim == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("precision compares eventually-follows against reachability") {
  EventLog log = testsup::make_log({{"s a e", 1}});
  DependencyGraph g = testsup::make_graph({"s", "a", "b", "e"}, {"s a", "s b", "a e", "b e"});
  PrecisionReport r = precision(log, g);
  CHECK(r.matched == 3);   // (s,a), (s,e), (a,e)
  CHECK(r.possible == 5);  // those plus (s,b), (b,e)
  CHECK(r.prm == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("arcs covering only non-log behaviour dilute precision") {
  EventLog log = testsup::make_log({{"s a e", 1}});
  DependencyGraph lean = testsup::make_graph({"s", "a", "e"}, {"s a", "a e"});
  DependencyGraph wide =
      testsup::make_graph({"s", "a", "b", "e"}, {"s a", "s b", "a e", "b e"});
  CHECK(precision(log, lean).prm > precision(log, wide).prm);
}

TEST_CASE("f_score is the harmonic mean with a zero guard") {
  CHECK(f_score(1.0, 1.0) == 1.0);
  CHECK(f_score(0.5, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f_score(0.0, 0.8) == 0.0);
  CHECK(f_score(-0.5, 0.4) == 0.0);  // negative fitness floors the guard
  double f = f_score(0.3, 0.9);
  CHECK(f <= 2 * 0.3);
  CHECK(f >= 0.3);
}

TEST_CASE("graph may contain tasks the log never plays") {
  EventLog log = testsup::make_log({{"s a e", 2}});
  DependencyGraph g =
      testsup::make_graph({"s", "a", "ghost", "e"}, {"s a", "a e", "s ghost", "ghost e"});
  CHECK_NOTHROW(quality(log, g));
  EventLog bigger = testsup::make_log({{"s a extra e", 1}});
  DependencyGraph small = testsup::make_graph({"s", "a", "e"}, {"s a", "a e"});
  CHECK_THROWS_AS(fitness(bigger, small), EvalError);
  CHECK_THROWS_AS(precision(bigger, small), EvalError);
}

TEST_CASE("degenerate inputs raise EvalError") {
  DependencyGraph g({"s", "e"}, 0, 1);  // no arcs: empty reachability
  EventLog log = testsup::make_log({{"s e", 1}});
  CHECK_THROWS_AS(precision(log, g), EvalError);
  CHECK_THROWS_AS(fitness(EventLog{}, g), EvalError);
}

TEST_CASE("self-loops count toward the arc number") {
  EventLog log = testsup::make_log({{"s a a e", 1}});
  DependencyGraph g = testsup::make_graph({"s", "a", "e"}, {"s a", "a a", "a e"});
  QualityReport q = quality(log, g);
  CHECK(q.an == 3);
  CHECK(q.fim == 1.0);
}

TEST_CASE("json dump carries the replay counters") {
  EventLog log = testsup::make_log({{"s a e", 1}});
  DependencyGraph g = testsup::make_graph({"s", "a", "e"}, {"s a", "a e"});
  std::string text = quality_to_json(quality(log, g));
  CHECK(text.find("\"fim\"") != std::string::npos);
  CHECK(text.find("\"aewpr\"") != std::string::npos);
  CHECK(text.find("\"possible\"") != std::string::npos);
}

}  // TEST_SUITE
