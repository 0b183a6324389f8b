#pragma once

#include <iosfwd>
#include <string>

#include "depmine/event_log.hpp"

namespace depmine {

// Column mapping for tabular logs.  `order_column` may be empty, in which
// case events keep file order within each case.
struct CsvMapping {
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::string order_column = "order";
};

// RFC-4180-style CSV with a header row.  Rows are grouped by case id; within
// a case, events are sorted by the order column (integer, decimal, or
// ISO-8601 timestamp) with ties keeping file order.  One Trace per case.
EventLog parse_csv(std::istream& in, const CsvMapping& mapping);
EventLog parse_csv_text(std::string_view text, const CsvMapping& mapping);

// Writes one row per event with columns case,activity,order; trace
// multiplicity is expanded into distinct case ids.
void write_csv(const EventLog& log, std::ostream& out);

}  // namespace depmine
