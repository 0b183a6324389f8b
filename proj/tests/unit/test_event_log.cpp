#include <doctest.h>

#include "depmine/errors.hpp"
#include "depmine/event_log.hpp"
#include "support.hpp"

using namespace depmine;

TEST_SUITE("event_log") {

TEST_CASE("alphabet interns names in first-seen order") {
  Alphabet a;
  CHECK(a.intern("pay") == 0);
  CHECK(a.intern("ship") == 1);
  CHECK(a.intern("pay") == 0);
  CHECK(a.size() == 2);
  CHECK(a.name(1) == "ship");
  CHECK(a.find("ship") == 1);
  CHECK_FALSE(a.find("refund").has_value());
  CHECK_THROWS_AS(a.name(2), ModelError);
  CHECK_THROWS_AS(a.name(-1), ModelError);
}

TEST_CASE("add_trace merges identical variants") {
  EventLog log = testsup::make_log({{"a b", 3}, {"a c", 1}, {"a b", 2}});
  REQUIRE(log.traces.size() == 2);
  CHECK(log.traces[0].count == 5);
  CHECK(log.traces[1].count == 1);
  CHECK(log.total_traces() == 6);
  CHECK(log.total_events() == 12);
  CHECK_THROWS_AS(log.add_trace({0}, 0), SchemaError);
  CHECK_THROWS_AS(log.add_trace({0}, -2), SchemaError);
}

TEST_CASE("natural unique endpoints are kept") {
  EventLog log = testsup::make_log({{"s a e", 4}, {"s b e", 1}});
  EventLog out = ensure_unique_endpoints(log);
  CHECK_FALSE(out.artificial_start);
  CHECK_FALSE(out.artificial_end);
  CHECK(out.alphabet.size() == 4);
  CHECK(out.start == testsup::task_id(out, "s"));
  CHECK(out.end == testsup::task_id(out, "e"));
  CHECK(out.traces[0].events.size() == 3);
}

TEST_CASE("artificial endpoints are added when boundaries diverge") {
  EventLog log = testsup::make_log({{"a b", 1}, {"b a", 1}});
  EventLog out = ensure_unique_endpoints(log);
  CHECK(out.artificial_start);
  CHECK(out.artificial_end);
  CHECK(out.start == testsup::task_id(out, "__start__"));
  CHECK(out.end == testsup::task_id(out, "__end__"));
  for (const Trace& t : out.traces) {
    CHECK(t.events.front() == out.start);
    CHECK(t.events.back() == out.end);
    CHECK(t.events.size() == 4);
  }
}

TEST_CASE("boundary task reappearing mid-trace forces an artificial endpoint") {
  // s opens every trace but also shows up inside one, so it cannot be the
  // unique start task.
  EventLog log = testsup::make_log({{"s a s e", 1}, {"s b e", 1}});
  EventLog out = ensure_unique_endpoints(log);
  CHECK(out.artificial_start);
  CHECK_FALSE(out.artificial_end);
  CHECK(out.start == testsup::task_id(out, "__start__"));
  CHECK(out.end == testsup::task_id(out, "e"));
}

TEST_CASE("single-task traces cannot share one endpoint task") {
  EventLog log = testsup::make_log({{"a", 5}});
  EventLog out = ensure_unique_endpoints(log);
  CHECK(out.artificial_start);
  CHECK(out.artificial_end);
  CHECK(out.traces[0].events.size() == 3);
}

TEST_CASE("ensure_unique_endpoints rejects degenerate logs") {
  CHECK_THROWS_AS(ensure_unique_endpoints(EventLog{}), SchemaError);
  EventLog log;
  log.add_trace({}, 1);
  CHECK_THROWS_AS(ensure_unique_endpoints(log), SchemaError);
}

TEST_CASE("json round-trip preserves the log") {
  EventLog log = ensure_unique_endpoints(testsup::make_log({{"a b", 7}, {"b a", 2}}));
  EventLog back = log_from_json(log_to_json(log));
  CHECK(back.alphabet.names() == log.alphabet.names());
  CHECK(back.traces == log.traces);
  CHECK(back.start == log.start);
  CHECK(back.end == log.end);
  CHECK(back.artificial_start);
  CHECK(back.artificial_end);
}

TEST_CASE("json parsing reports typed errors") {
  CHECK_THROWS_AS(log_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(log_from_json("[1,2]"), SchemaError);
  CHECK_THROWS_AS(log_from_json(R"({"alphabet":["a"],"traces":[{"events":[3]}]})"), SchemaError);
  CHECK_THROWS_AS(log_from_json(R"({"alphabet":["a"],"traces":[{"events":[0],"count":0}]})"),
                  SchemaError);
  CHECK_THROWS_AS(log_from_json(R"({"alphabet":["a"],"traces":[],"start":4})"), SchemaError);
}

}  // TEST_SUITE
