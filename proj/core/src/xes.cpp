#include "depmine/xes.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "depmine/errors.hpp"

namespace depmine {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
  });
}

struct Attribute {
  std::string key;
  std::string value;
};

struct Tag {
  std::string name;
  std::vector<Attribute> attributes;
  bool self_closing = false;
  bool closing = false;
};

const std::string* find_attr(const Tag& tag, std::string_view key) {
  for (const Attribute& a : tag.attributes)
    if (a.key == key) return &a.value;
  return nullptr;
}

// Minimal non-validating XML reader: enough for the XES core subset, with
// line/column positions for error reporting.
class XmlReader {
 public:
  explicit XmlReader(std::string_view text) : text_(text) {}

  // Advances to the next start or end tag; returns false at end of input.
  bool next(Tag& tag) {
    for (;;) {
      skip_until_markup();
      if (eof()) return false;
      if (try_skip("<?")) {
        skip_past("?>");
      } else if (try_skip("<!--")) {
        skip_past("-->");
      } else if (try_skip("<![CDATA[")) {
        skip_past("]]>");
      } else if (try_skip("<!")) {
        skip_doctype();
      } else {
        parse_tag(tag);
        return true;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool try_skip(std::string_view lit) {
    if (text_.substr(pos_).starts_with(lit)) {
      for (std::size_t k = 0; k < lit.size(); ++k) take();
      return true;
    }
    return false;
  }

  void skip_past(std::string_view lit) {
    while (!eof()) {
      if (try_skip(lit)) return;
      take();
    }
    fail(std::string("unterminated construct, expected '") + std::string(lit) + "'");
  }

  void skip_doctype() {
    int brackets = 0;
    while (!eof()) {
      char c = take();
      if (c == '[') ++brackets;
      else if (c == ']') --brackets;
      else if (c == '>' && brackets == 0) return;
    }
    fail("unterminated '<!' declaration");
  }

  void skip_until_markup() {
    while (!eof() && peek() != '<') {
      take();  // character data between tags is ignored
    }
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) take();
  }

  std::string parse_name() {
    std::string name;
    while (!eof()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == '>' || c == '/' || c == '=') break;
      name.push_back(take());
    }
    if (name.empty()) fail("expected a name");
    return name;
  }

  std::string decode_entities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (raw[k] != '&') {
        out.push_back(raw[k]);
        continue;
      }
      std::size_t semi = raw.find(';', k);
      if (semi == std::string_view::npos) fail("unterminated entity reference");
      std::string_view ent = raw.substr(k + 1, semi - k - 1);
      if (ent == "amp") out.push_back('&');
      else if (ent == "lt") out.push_back('<');
      else if (ent == "gt") out.push_back('>');
      else if (ent == "quot") out.push_back('"');
      else if (ent == "apos") out.push_back('\'');
      else if (ent.starts_with("#")) {
        int base = 10;
        std::string_view digits = ent.substr(1);
        if (digits.starts_with("x") || digits.starts_with("X")) {
          base = 16;
          digits = digits.substr(1);
        }
        unsigned long code = 0;
        try {
          code = std::stoul(std::string(digits), nullptr, base);
        } catch (const std::exception&) {
          fail("invalid character reference");
        }
        append_utf8(out, code);
      } else {
        fail("unknown entity '&" + std::string(ent) + ";'");
      }
      k = semi;
    }
    return out;
  }

  static void append_utf8(std::string& out, unsigned long code) {
    if (code < 0x80) {
      out.push_back(static_cast<char>(code));
    } else if (code < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (code >> 6)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else if (code < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (code >> 12)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (code >> 18)));
      out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    }
  }

  std::string parse_attr_value() {
    skip_ws();
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    char quote = take();
    std::string raw;
    while (!eof() && peek() != quote) raw.push_back(take());
    if (eof()) fail("unterminated attribute value");
    take();  // closing quote
    return decode_entities(raw);
  }

  void parse_tag(Tag& tag) {
    tag = Tag{};
    if (!try_skip("<")) fail("expected '<'");
    if (try_skip("/")) tag.closing = true;
    tag.name = parse_name();
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated tag '" + tag.name + "'");
      if (try_skip("/>")) {
        tag.self_closing = true;
        return;
      }
      if (try_skip(">")) return;
      if (tag.closing) fail("attributes not allowed in closing tag");
      Attribute attr;
      attr.key = parse_name();
      skip_ws();
      if (!try_skip("=")) fail("expected '=' after attribute name");
      attr.value = parse_attr_value();
      tag.attributes.push_back(std::move(attr));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string escape_xml(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

EventLog parse_xes_text(std::string_view text) {
  XmlReader reader(text);
  EventLog log;
  std::vector<std::string> stack;

  bool saw_log = false;
  int trace_no = 0;
  std::string trace_label;
  std::vector<int> trace_events;
  bool in_trace = false;
  bool in_event = false;
  std::optional<std::string> event_name;
  std::optional<std::string> event_lifecycle;

  auto trace_display = [&]() {
    return trace_label.empty() ? "#" + std::to_string(trace_no) : "'" + trace_label + "'";
  };

  Tag tag;
  while (reader.next(tag)) {
    if (tag.closing) {
      if (stack.empty() || stack.back() != tag.name)
        reader.fail("mismatched closing tag '" + tag.name + "'");
      stack.pop_back();
    }
    const bool is_close = tag.closing || tag.self_closing;
    const bool is_open = !tag.closing;

    if (is_open) {
      const std::string& parent = stack.empty() ? std::string() : stack.back();
      if (tag.name == "log") {
        saw_log = true;
      } else if (tag.name == "trace" && parent == "log") {
        in_trace = true;
        ++trace_no;
        trace_label.clear();
        trace_events.clear();
      } else if (tag.name == "event" && in_trace && parent == "trace") {
        in_event = true;
        event_name.reset();
        event_lifecycle.reset();
      } else if (in_event && parent == "event") {
        const std::string* key = find_attr(tag, "key");
        const std::string* value = find_attr(tag, "value");
        if (key && value) {
          if (*key == "concept:name") event_name = *value;
          else if (*key == "lifecycle:transition") event_lifecycle = *value;
        }
      } else if (in_trace && !in_event && parent == "trace") {
        const std::string* key = find_attr(tag, "key");
        const std::string* value = find_attr(tag, "value");
        if (key && value && *key == "concept:name") trace_label = *value;
      }
      if (!tag.self_closing) stack.push_back(tag.name);
    }

    if (is_close) {
      if (tag.name == "event" && in_event) {
        in_event = false;
        if (!event_lifecycle || iequals(*event_lifecycle, "complete")) {
          if (!event_name)
            throw SchemaError("event missing concept:name in trace " + trace_display());
          trace_events.push_back(log.alphabet.intern(*event_name));
        }
      } else if (tag.name == "trace" && in_trace) {
        in_trace = false;
        if (trace_events.empty())
          throw SchemaError("trace " + trace_display() + " has no events");
        log.add_trace(std::move(trace_events));
        trace_events = {};
      }
    }
  }
  if (!stack.empty()) reader.fail("unclosed element '" + stack.back() + "'");
  if (!saw_log) throw SchemaError("input has no <log> element");
  if (log.traces.empty()) throw SchemaError("log has no traces");
  return log;
}

EventLog parse_xes(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_xes_text(buf.str());
}

void write_xes(const EventLog& log, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<log xes.version=\"1.0\" xes.features=\"\">\n";
  out << "  <extension name=\"Concept\" prefix=\"concept\" "
         "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
  out << "  <extension name=\"Lifecycle\" prefix=\"lifecycle\" "
         "uri=\"http://www.xes-standard.org/lifecycle.xesext\"/>\n";
  std::int64_t case_no = 0;
  for (const Trace& t : log.traces) {
    for (std::int64_t rep = 0; rep < t.count; ++rep) {
      out << "  <trace>\n";
      out << "    <string key=\"concept:name\" value=\"case_" << case_no++ << "\"/>\n";
      for (int e : t.events) {
        out << "    <event>\n";
        out << "      <string key=\"concept:name\" value=\"" << escape_xml(log.alphabet.name(e))
            << "\"/>\n";
        out << "      <string key=\"lifecycle:transition\" value=\"complete\"/>\n";
        out << "    </event>\n";
      }
      out << "  </trace>\n";
    }
  }
  out << "</log>\n";
}

}  // namespace depmine
