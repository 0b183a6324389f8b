#pragma once

#include <iosfwd>
#include <string>

#include "depmine/event_log.hpp"

namespace depmine {

// Reads the XES core subset: log/trace/event elements, event attributes
// concept:name (required) and lifecycle:transition (events with a lifecycle
// other than "complete" are skipped).  Other content is ignored.
EventLog parse_xes(std::istream& in);
EventLog parse_xes_text(std::string_view text);

// Writes a minimal XES document; trace multiplicity is expanded.
void write_xes(const EventLog& log, std::ostream& out);

}  // namespace depmine
