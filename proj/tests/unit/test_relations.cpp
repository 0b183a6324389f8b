#include <doctest.h>

#include "depmine/relations.hpp"
#include "depmine/rng.hpp"
#include "support.hpp"

using namespace depmine;

TEST_SUITE("relations") {

TEST_CASE("alternating trace counts, overlapping repetitions included") {
  EventLog log = testsup::make_log({{"a b a b a", 1}});
  RelationCounts c = count_relations(log);
  int a = testsup::task_id(log, "a");
  int b = testsup::task_id(log, "b");
  REQUIRE(c.n == 2);
  CHECK(c.freq[a] == 3);
  CHECK(c.freq[b] == 2);
  CHECK(c.direct(a, b) == 2);
  CHECK(c.direct(b, a) == 2);
  CHECK(c.direct(a, a) == 0);
  CHECK(c.repeat2(a, b) == 2);
  CHECK(c.repeat2(b, a) == 1);
  CHECK(c.repeat2(a, a) == 0);
}

TEST_CASE("counts scale with trace multiplicity") {
  EventLog once = testsup::make_log({{"a b a b a", 1}});
  EventLog many = testsup::make_log({{"a b a b a", 7}});
  RelationCounts c1 = count_relations(once);
  RelationCounts c7 = count_relations(many);
  for (int i = 0; i < 2; ++i) {
    CHECK(c7.freq[i] == 7 * c1.freq[i]);
    for (int j = 0; j < 2; ++j) {
      CHECK(c7.direct(i, j) == 7 * c1.direct(i, j));
      CHECK(c7.repeat2(i, j) == 7 * c1.repeat2(i, j));
    }
  }
}

TEST_CASE("self-loop run counts direct and repeat2 on the diagonal") {
  EventLog log = testsup::make_log({{"a a a", 1}});
  RelationCounts c = count_relations(log);
  CHECK(c.direct(0, 0) == 2);
  CHECK(c.repeat2(0, 0) == 1);
  CHECK(c.freq[0] == 3);
}

TEST_CASE("counts accumulate over distinct variants") {
  EventLog log = testsup::make_log({{"s a e", 10}, {"s b e", 5}});
  RelationCounts c = count_relations(log);
  int s = testsup::task_id(log, "s");
  int a = testsup::task_id(log, "a");
  int b = testsup::task_id(log, "b");
  int e = testsup::task_id(log, "e");
  CHECK(c.freq[s] == 15);
  CHECK(c.direct(s, a) == 10);
  CHECK(c.direct(s, b) == 5);
  CHECK(c.direct(a, e) == 10);
  CHECK(c.direct(b, e) == 5);
  CHECK(c.direct(a, b) == 0);
}

TEST_CASE("eventually_follows marks strict precedence within a trace") {
  EventLog log = testsup::make_log({{"s a e", 1}, {"s b e", 1}});
  EventuallyFollows ef = eventually_follows(log);
  int s = testsup::task_id(log, "s");
  int a = testsup::task_id(log, "a");
  int b = testsup::task_id(log, "b");
  int e = testsup::task_id(log, "e");
  CHECK(ef.fl(s, a) == 1);
  CHECK(ef.fl(s, b) == 1);
  CHECK(ef.fl(s, e) == 1);
  CHECK(ef.fl(a, e) == 1);
  CHECK(ef.fl(b, e) == 1);
  CHECK(ef.fl(a, b) == 0);
  CHECK(ef.fl(e, s) == 0);
  CHECK(ef.fl(a, a) == 0);
  // Repetition turns on the diagonal.
  EventuallyFollows ef2 = eventually_follows(testsup::make_log({{"a b a", 1}}));
  CHECK(ef2.fl(0, 0) == 1);
  CHECK(ef2.fl(1, 0) == 1);
  CHECK(ef2.fl(0, 1) == 1);
  CHECK(ef2.fl(1, 1) == 0);
}

TEST_CASE("json dump lists tasks and matrices") {
  EventLog log = testsup::make_log({{"a b", 2}});
  RelationCounts c = count_relations(log);
  std::string text = relations_to_json(c, log.alphabet);
  CHECK(text.find("\"tasks\"") != std::string::npos);
  CHECK(text.find("\"direct\"") != std::string::npos);
  CHECK(text.find("\"repeat2\"") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("random logs: direct-succession totals match event adjacencies") {
  // Cross-check with an independent recount over expanded traces.
  Rng rng(99);
  EventLog log;
  for (int t = 0; t < 50; ++t) {
    std::vector<int> events;
    int len = rng.next_int(1, 12);
    for (int k = 0; k < len; ++k)
      events.push_back(log.alphabet.intern(std::string(1, static_cast<char>('a' + rng.next_int(0, 4)))));
    log.add_trace(std::move(events), rng.next_int(1, 3));
  }
  RelationCounts c = count_relations(log);
  std::int64_t pair_total = 0;
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) pair_total += c.direct(i, j);
  std::int64_t expected = 0;
  for (const Trace& t : log.traces)
    expected += t.count * static_cast<std::int64_t>(t.events.size() - 1);
  CHECK(pair_total == expected);
  std::int64_t freq_total = 0;
  for (std::int64_t f : c.freq) freq_total += f;
  CHECK(freq_total == log.total_events());
}

}  // TEST_SUITE
