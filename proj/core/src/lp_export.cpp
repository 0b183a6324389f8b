#include <cstdio>
#include <string>

#include "depmine/errors.hpp"
#include "depmine/ilp_model.hpp"

namespace depmine {

namespace {

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// Writes "coeff name" terms with +/- separators, wrapping for readability.
class TermWriter {
 public:
  explicit TermWriter(std::string& out) : out_(out) {}

  void add(double coeff, const std::string& name) {
    if (count_ == 0) {
      out_ += coeff < 0 ? "- " : "";
    } else {
      out_ += coeff < 0 ? " - " : " + ";
      if (count_ % 8 == 0) out_ += "\n    ";
    }
    out_ += fmt(coeff < 0 ? -coeff : coeff);
    out_ += ' ';
    out_ += name;
    ++count_;
  }

  bool empty() const { return count_ == 0; }

 private:
  std::string& out_;
  int count_ = 0;
};

}  // namespace

std::string export_lp(const IlpModel& model) {
  std::string out;
  out.reserve(1 << 16);
  out += "\\ dependency graph discovery model\n";
  out += "Maximize\n obj: ";
  {
    TermWriter terms(out);
    for (int v = 0; v < model.var_count(); ++v) {
      double coeff = model.objective()[static_cast<std::size_t>(v)];
      if (coeff != 0.0) terms.add(coeff, model.var_name(v));
    }
  }
  out += "\nSubject To\n";
  for (const LinearRow& row : model.rows()) {
    if (row.terms.empty()) throw ModelError("cannot export empty row " + row.name);
    out += ' ';
    out += row.name;
    out += ": ";
    TermWriter terms(out);
    for (auto [var, coeff] : row.terms) terms.add(coeff, model.var_name(var));
    switch (row.rel) {
      case RowRelation::LessEqual: out += " <= "; break;
      case RowRelation::Equal: out += " = "; break;
      case RowRelation::GreaterEqual: out += " >= "; break;
    }
    out += fmt(row.rhs);
    out += '\n';
  }
  out += "Bounds\n";
  for (int v = 0; v < model.var_count(); ++v) {
    const VarInfo& info = model.variables()[static_cast<std::size_t>(v)];
    if (info.domain == VarDomain::Binary && info.upper == 0.0) {
      out += ' ' + model.var_name(v) + " = 0\n";
    } else if (info.domain == VarDomain::Integer) {
      out += ' ' + fmt(info.lower) + " <= " + model.var_name(v) + " <= " + fmt(info.upper) + '\n';
    }
  }
  out += "Binaries\n";
  {
    int on_line = 0;
    for (int v = 0; v < model.var_count(); ++v) {
      if (model.variables()[static_cast<std::size_t>(v)].domain != VarDomain::Binary) continue;
      out += on_line == 0 ? " " : " ";
      out += model.var_name(v);
      if (++on_line == 10) {
        out += '\n';
        on_line = 0;
      }
    }
    if (on_line != 0) out += '\n';
  }
  out += "Generals\n";
  {
    int on_line = 0;
    for (int v = 0; v < model.var_count(); ++v) {
      if (model.variables()[static_cast<std::size_t>(v)].domain != VarDomain::Integer) continue;
      out += ' ';
      out += model.var_name(v);
      if (++on_line == 10) {
        out += '\n';
        on_line = 0;
      }
    }
    if (on_line != 0) out += '\n';
  }
  out += "End\n";
  return out;
}

}  // namespace depmine
