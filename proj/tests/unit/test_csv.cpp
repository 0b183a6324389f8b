#include <doctest.h>

#include <sstream>

#include "depmine/csv.hpp"
#include "depmine/errors.hpp"
#include "support.hpp"

using namespace depmine;

TEST_SUITE("csv") {

TEST_CASE("groups rows by case and sorts by order column") {
  const char* text =
      "case,activity,order\n"
      "c1,check,2\n"
      "c2,register,1\n"
      "c1,register,1\n"
      "c1,pay,3\n"
      "c2,pay,2\n";
  EventLog log = parse_csv_text(text, CsvMapping{});
  REQUIRE(log.traces.size() == 2);
  // Cases keep first-appearance order; events within a case are order-sorted.
  CHECK(log.alphabet.name(log.traces[0].events[0]) == "register");
  CHECK(log.alphabet.name(log.traces[0].events[1]) == "check");
  CHECK(log.alphabet.name(log.traces[0].events[2]) == "pay");
  CHECK(log.traces[1].events.size() == 2);
}

TEST_CASE("empty order column keeps file order") {
  const char* text =
      "id,act\n"
      "c,third\n"
      "c,first\n";
  CsvMapping m;
  m.case_column = "id";
  m.activity_column = "act";
  m.order_column.clear();
  EventLog log = parse_csv_text(text, m);
  REQUIRE(log.traces.size() == 1);
  CHECK(log.alphabet.name(log.traces[0].events[0]) == "third");
  CHECK(log.alphabet.name(log.traces[0].events[1]) == "first");
}

TEST_CASE("order ties keep file order (stable sort)") {
  const char* text =
      "case,activity,order\n"
      "c,a,1\n"
      "c,b,1\n"
      "c,c,1\n";
  EventLog log = parse_csv_text(text, CsvMapping{});
  CHECK(log.traces[0].events == std::vector<int>{0, 1, 2});
}

TEST_CASE("quoted fields, embedded separators, and CRLF") {
  const char* text =
      "case,activity,order\r\n"
      "\"c,1\",\"say \"\"hi\"\"\",1\r\n"
      "\"c,1\",\"multi\nline\",2\r\n";
  EventLog log = parse_csv_text(text, CsvMapping{});
  REQUIRE(log.traces.size() == 1);
  CHECK(log.alphabet.name(0) == "say \"hi\"");
  CHECK(log.alphabet.name(1) == "multi\nline");
}

TEST_CASE("timestamp order values sort correctly") {
  const char* text =
      "case,activity,order\n"
      "c,late,2024-03-01T10:00:00Z\n"
      "c,early,2024-03-01T08:59:59Z\n"
      "c,middle,2024-03-01 10:00:00+01:00\n";  // = 09:00 UTC
  EventLog log = parse_csv_text(text, CsvMapping{});
  REQUIRE(log.traces.size() == 1);
  CHECK(log.alphabet.name(log.traces[0].events[0]) == "early");
  CHECK(log.alphabet.name(log.traces[0].events[1]) == "middle");
  CHECK(log.alphabet.name(log.traces[0].events[2]) == "late");
}

TEST_CASE("identical case sequences merge into one variant") {
  const char* text =
      "case,activity,order\n"
      "c1,a,1\nc1,b,2\n"
      "c2,a,1\nc2,b,2\n";
  EventLog log = parse_csv_text(text, CsvMapping{});
  REQUIRE(log.traces.size() == 1);
  CHECK(log.traces[0].count == 2);
}

TEST_CASE("error taxonomy: parse vs schema vs config") {
  CHECK_THROWS_AS(parse_csv_text("", CsvMapping{}), SchemaError);
  CHECK_THROWS_AS(parse_csv_text("case,activity,order\n", CsvMapping{}), SchemaError);
  CHECK_THROWS_AS(parse_csv_text("wrong,header,row\nc,a,1\n", CsvMapping{}), ConfigError);
  CHECK_THROWS_AS(parse_csv_text("case,activity,order\nc,a\n", CsvMapping{}), ParseError);
  CHECK_THROWS_AS(parse_csv_text("case,activity,order\nc,a,not-a-number\n", CsvMapping{}),
                  ParseError);
  CHECK_THROWS_AS(parse_csv_text("case,activity,order\n\"c,a,1\n", CsvMapping{}), ParseError);
}

TEST_CASE("write then parse round-trips with multiplicity expanded") {
  EventLog log = testsup::make_log({{"a b", 2}, {"b a", 1}});
  std::ostringstream out;
  write_csv(log, out);
  std::istringstream in(out.str());
  EventLog back = parse_csv(in, CsvMapping{});
  CHECK(back.alphabet.names() == log.alphabet.names());
  CHECK(back.traces == log.traces);
  CHECK(back.total_traces() == 3);
}

}  // TEST_SUITE
