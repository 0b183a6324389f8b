#include "depmine/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "depmine/errors.hpp"

namespace depmine {

namespace {

// Splits CSV text into records of fields (RFC 4180: quoted fields may contain
// commas, doubled quotes, and newlines).
std::vector<std::vector<std::string>> read_records(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);  // UTF-8 BOM
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A record of one empty field is a blank line; skip it.
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    if (in_quotes) {
      if (c == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          field.push_back('"');
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      if (k + 1 < text.size() && text[k + 1] == '\n') ++k;
      end_record();
    } else if (c == '\n') {
      end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted CSV field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

// Days since 1970-01-01 for a proleptic Gregorian date.
long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  long long era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
  unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

bool parse_timestamp(const std::string& text, double& out) {
  int y, mo, d, h, mi;
  double sec = 0;
  int consumed = 0;
  char sep;
  if (std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%lf%n", &y, &mo, &d, &sep, &h, &mi, &sec,
                  &consumed) < 7)
    return false;
  if (sep != 'T' && sep != 't' && sep != ' ') return false;
  double offset = 0;
  std::string rest = text.substr(static_cast<std::size_t>(consumed));
  if (!rest.empty() && rest != "Z" && rest != "z") {
    int oh, om;
    char sign;
    int rc = 0;
    if (std::sscanf(rest.c_str(), "%c%d:%d%n", &sign, &oh, &om, &rc) == 3 &&
        rc == static_cast<int>(rest.size()) && (sign == '+' || sign == '-')) {
      offset = (sign == '+' ? 1 : -1) * (oh * 3600.0 + om * 60.0);
    } else {
      return false;
    }
  }
  out = static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 + sec -
        offset;
  return true;
}

double parse_order_value(const std::string& text, std::size_t record_no) {
  double value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec == std::errc() && ptr == end && !text.empty()) return value;
  if (parse_timestamp(text, value)) return value;
  throw ParseError("row " + std::to_string(record_no) + ": cannot parse order value '" + text +
                   "'");
}

void write_field(std::ostream& out, const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << "\"\"";
    else out << c;
  }
  out << '"';
}

}  // namespace

EventLog parse_csv_text(std::string_view text, const CsvMapping& mapping) {
  auto records = read_records(text);
  if (records.empty()) throw SchemaError("CSV input has no header row");
  const auto& header = records.front();

  auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("CSV column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  std::size_t case_col = column_of(mapping.case_column);
  std::size_t act_col = column_of(mapping.activity_column);
  bool has_order = !mapping.order_column.empty();
  std::size_t order_col = has_order ? column_of(mapping.order_column) : 0;

  struct Row {
    double order;
    std::size_t file_pos;
    int task;
  };
  EventLog log;
  std::map<std::string, std::vector<Row>> cases;
  std::vector<const std::string*> case_order;

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    std::size_t needed = std::max(std::max(case_col, act_col), has_order ? order_col : 0);
    if (rec.size() <= needed)
      throw ParseError("row " + std::to_string(r + 1) + ": expected at least " +
                       std::to_string(needed + 1) + " fields, got " + std::to_string(rec.size()));
    double order = has_order ? parse_order_value(rec[order_col], r + 1) : 0.0;
    int task = log.alphabet.intern(rec[act_col]);
    auto [it, inserted] = cases.try_emplace(rec[case_col]);
    if (inserted) case_order.push_back(&it->first);
    it->second.push_back(Row{order, r, task});
  }
  if (cases.empty()) throw SchemaError("CSV input has no data rows");

  for (const std::string* case_id : case_order) {
    auto& rows = cases.at(*case_id);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.order < b.order; });
    std::vector<int> events;
    events.reserve(rows.size());
    for (const Row& row : rows) events.push_back(row.task);
    log.add_trace(std::move(events));
  }
  return log;
}

EventLog parse_csv(std::istream& in, const CsvMapping& mapping) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_text(buf.str(), mapping);
}

void write_csv(const EventLog& log, std::ostream& out) {
  out << "case,activity,order\n";
  std::int64_t case_no = 0;
  for (const Trace& t : log.traces) {
    for (std::int64_t rep = 0; rep < t.count; ++rep) {
      std::string case_id = "case_" + std::to_string(case_no++);
      for (std::size_t k = 0; k < t.events.size(); ++k) {
        write_field(out, case_id);
        out << ',';
        write_field(out, log.alphabet.name(t.events[k]));
        out << ',' << k << '\n';
      }
    }
  }
}

}  // namespace depmine
