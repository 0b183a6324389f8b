#include <doctest.h>

#include <cmath>

#include "depmine/measures.hpp"
#include "depmine/rng.hpp"
#include "support.hpp"

using namespace depmine;

TEST_SUITE("measures") {

TEST_CASE("alternating trace: exact smoothed values") {
  // a b a b a: |a>b| = |b>a| = 2, repetitions 2 and 1.
  DependencyMeasures m = testsup::measures_of(testsup::make_log({{"a b a b a", 1}}));
  REQUIRE(m.n == 2);
  CHECK(m.arc(0, 1) == 0.0);  // (2-2)/(2+2+1), exactly zero
  CHECK(m.arc(1, 0) == 0.0);
  CHECK(m.self_loop[0] == 0.0);
  CHECK(m.self_loop[1] == 0.0);
  CHECK(m.two_loop(0, 1) == 0.75);  // (2+1)/(2+1+1)
  CHECK(m.two_loop(1, 0) == 0.75);
  CHECK(m.arc(0, 0) == 0.0);
  CHECK(m.two_loop(1, 1) == 0.0);
}

TEST_CASE("chain log: arc score is count/(count+1)") {
  DependencyMeasures m = testsup::measures_of(testsup::make_log({{"s a e", 10}}));
  EventLog log = testsup::make_log({{"s a e", 10}});
  int s = testsup::task_id(log, "s");
  int a = testsup::task_id(log, "a");
  int e = testsup::task_id(log, "e");
  CHECK(m.arc(s, a) == doctest::Approx(10.0 / 11.0).epsilon(1e-15));
  CHECK(m.arc(a, e) == doctest::Approx(10.0 / 11.0).epsilon(1e-15));
  CHECK(m.arc(a, s) == doctest::Approx(-10.0 / 11.0).epsilon(1e-15));
  CHECK(m.arc(s, e) == 0.0);
}

TEST_CASE("self-loop score saturates toward one") {
  DependencyMeasures m = testsup::measures_of(testsup::make_log({{"a a a", 1}}));
  CHECK(m.self_loop[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  DependencyMeasures big = testsup::measures_of(testsup::make_log({{"a a a", 100}}));
  CHECK(big.self_loop[0] == doctest::Approx(200.0 / 201.0).epsilon(1e-15));
  CHECK(big.self_loop[0] < 1.0);
}

TEST_CASE("antisymmetry and symmetry hold exactly on random counts") {
  Rng rng(314);
  for (int round = 0; round < 20; ++round) {
    RelationCounts c;
    c.n = 5;
    c.freq.assign(5, 1);
    c.direct = Grid<std::int64_t>(5, 5, 0);
    c.repeat2 = Grid<std::int64_t>(5, 5, 0);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        c.direct(i, j) = static_cast<std::int64_t>(rng.next_below(1000));
        c.repeat2(i, j) = static_cast<std::int64_t>(rng.next_below(1000));
      }
    DependencyMeasures m = dependency_measures(c);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        if (i == j) continue;
        CHECK(m.arc(i, j) == -m.arc(j, i));  // exact: same ints, negated numerator
        CHECK(m.two_loop(i, j) == m.two_loop(j, i));
        CHECK(m.arc(i, j) > -1.0);
        CHECK(m.arc(i, j) < 1.0);
        CHECK(m.two_loop(i, j) >= 0.0);
        CHECK(m.two_loop(i, j) < 1.0);
      }
  }
}

TEST_CASE("arc score grows with supporting counts") {
  RelationCounts c;
  c.n = 2;
  c.freq.assign(2, 1);
  c.direct = Grid<std::int64_t>(2, 2, 0);
  c.repeat2 = Grid<std::int64_t>(2, 2, 0);
  double prev = -1.0;
  for (std::int64_t k = 0; k <= 50; ++k) {
    c.direct(0, 1) = k;
    double d = dependency_measures(c).arc(0, 1);
    CHECK(d > prev);
    prev = d;
  }
  CHECK(prev == doctest::Approx(50.0 / 51.0).epsilon(1e-15));
}

TEST_CASE("json dump contains all three measure blocks") {
  EventLog log = testsup::make_log({{"a b", 1}});
  DependencyMeasures m = testsup::measures_of(log);
  std::string text = measures_to_json(m, log.alphabet);
  CHECK(text.find("\"arc\"") != std::string::npos);
  CHECK(text.find("\"self_loop\"") != std::string::npos);
  CHECK(text.find("\"two_loop\"") != std::string::npos);
}

}  // TEST_SUITE
