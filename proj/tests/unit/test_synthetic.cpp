#include <doctest.h>

#include <algorithm>
#include <set>

#include "depmine/errors.hpp"
#include "depmine/synthetic.hpp"
#include "support.hpp"

using namespace depmine;

TEST_SUITE("synthetic") {

TEST_CASE("sequence spec emits the alphabet in order") {
  SyntheticSpec spec;
  spec.alphabet_size = 4;
  spec.blocks = {BlockKind::Sequence};
  EventLog log = generate_synthetic_log(spec, 25, 0.0, 7);
  REQUIRE(log.traces.size() == 1);  // noiseless sequence has one variant
  CHECK(log.traces[0].count == 25);
  // Unique endpoints: a opens and d closes every trace, so both are natural.
  CHECK_FALSE(log.artificial_start);
  CHECK_FALSE(log.artificial_end);
  CHECK(log.traces[0].events.size() == 4);
}

TEST_CASE("choice block emits exactly one of its tasks") {
  SyntheticSpec spec;
  spec.alphabet_size = 6;
  spec.blocks = {BlockKind::Sequence, BlockKind::Choice, BlockKind::Sequence};
  EventLog log = generate_synthetic_log(spec, 200, 0.0, 11);
  for (const Trace& t : log.traces) {
    // blocks get tasks round-robin: seq {a,d}, choice {b,e}, seq {c,f};
    // trace = a d (b|e) c f with natural endpoints a and f.
    CHECK(t.events.size() == 5);
    CHECK(t.events.front() == log.start);
    CHECK(t.events.back() == log.end);
  }
  CHECK(log.traces.size() == 2);
  CHECK_FALSE(log.artificial_start);
}

TEST_CASE("concurrency block produces interleavings of the same task set") {
  SyntheticSpec spec;
  spec.alphabet_size = 4;
  spec.blocks = {BlockKind::Concurrency};
  EventLog log = generate_synthetic_log(spec, 300, 0.0, 3);
  CHECK(log.traces.size() > 1);
  std::set<std::vector<int>> bodies;
  for (const Trace& t : log.traces) {
    std::vector<int> body(t.events.begin() + 1, t.events.end() - 1);
    std::vector<int> sorted = body;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3});
    bodies.insert(body);
  }
  CHECK(bodies.size() == log.traces.size());
}

TEST_CASE("same seed reproduces the log; different seed varies it") {
  SyntheticSpec spec;
  spec.alphabet_size = 8;
  spec.blocks = {BlockKind::Sequence, BlockKind::Concurrency};
  spec.loop_probability = 0.2;
  EventLog a = generate_synthetic_log(spec, 100, 0.1, 42);
  EventLog b = generate_synthetic_log(spec, 100, 0.1, 42);
  EventLog c = generate_synthetic_log(spec, 100, 0.1, 43);
  CHECK(a.traces == b.traces);
  CHECK(a.alphabet.names() == b.alphabet.names());
  CHECK(a.traces != c.traces);
}

TEST_CASE("noise perturbs traces but never empties them") {
  SyntheticSpec spec;
  spec.alphabet_size = 3;
  EventLog log = generate_synthetic_log(spec, 500, 0.9, 5);
  CHECK(log.total_traces() == 500);
  for (const Trace& t : log.traces) CHECK(t.events.size() >= 3);  // start + body + end
  CHECK(log.artificial_start);
  CHECK(log.artificial_end);
}

TEST_CASE("loop probability repeats blocks up to the cap") {
  SyntheticSpec spec;
  spec.alphabet_size = 2;
  spec.blocks = {BlockKind::Sequence};
  spec.loop_probability = 1.0;
  spec.max_block_repeats = 3;
  EventLog log = generate_synthetic_log(spec, 10, 0.0, 1);
  REQUIRE(log.traces.size() == 1);
  // certain repetition: body = 4 emissions of (a b) under repeats<3 loop.
  CHECK(log.traces[0].events.size() == 2 + 4 * 2);
  CHECK(log.artificial_start);  // 'a' reappears mid-trace
}

TEST_CASE("invalid specs throw GenerateError") {
  SyntheticSpec spec;
  spec.alphabet_size = 1;
  CHECK_THROWS_AS(generate_synthetic_log(spec, 10, 0.0, 1), GenerateError);
  spec.alphabet_size = 2;
  CHECK_THROWS_AS(generate_synthetic_log(spec, 0, 0.0, 1), GenerateError);
  CHECK_THROWS_AS(generate_synthetic_log(spec, 10, -0.1, 1), GenerateError);
  CHECK_THROWS_AS(generate_synthetic_log(spec, 10, 1.5, 1), GenerateError);
  spec.blocks = {BlockKind::Sequence, BlockKind::Choice, BlockKind::Choice};
  CHECK_THROWS_AS(generate_synthetic_log(spec, 10, 0.0, 1), GenerateError);
}

}  // TEST_SUITE
