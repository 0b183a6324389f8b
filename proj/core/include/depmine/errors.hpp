#pragma once

#include <stdexcept>
#include <string>

namespace depmine {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (XES/CSV/JSON/config syntax).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

// Structurally valid input that is missing required data.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value or unknown configuration key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Inconsistent arguments when building or querying a model/graph.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Solve-stage failure (numerical breakdown, infeasible model, limits).
class SolveError : public Error {
 public:
  using Error::Error;
};

// Evaluation cannot produce a defined value (e.g. empty reachability).
class EvalError : public Error {
 public:
  using Error::Error;
};

// Synthetic-log generator given a spec with no executable path.
class GenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace depmine
