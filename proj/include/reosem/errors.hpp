#pragma once

#include <stdexcept>
#include <string>

namespace reosem {

// Base class for everything thrown by this library on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation's precondition requires a valid model and validation failed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed the configured assignment budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// An automaton cannot be represented as a next function: two transitions
// share source, firing set and constraint but disagree on the target.
class NondeterminismError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (circuit DSL, constraint syntax, model files).
// line/column are 1-based; 0 means "not meaningful for this input".
class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column)
      : Error(std::move(message)), line_(line), column_(column) {}
  explicit ParseError(std::string message) : ParseError(std::move(message), 0, 0) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace reosem
