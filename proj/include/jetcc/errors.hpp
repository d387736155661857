#pragma once

#include <stdexcept>
#include <string>

namespace jetcc {

// Malformed input (grammar, names, indices). CLI exit code 1.
struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& what, int line_, int col_)
      : std::runtime_error(what), line(line_), col(col_) {}
};

// A documented precondition of an operation failed (e.g. sequence dims on a
// system that is not formally integrable). Reported, not a crash.
struct PreconditionError : std::runtime_error {
  std::string failing_check;
  PreconditionError(const std::string& what, std::string check)
      : std::runtime_error(what), failing_check(std::move(check)) {}
};

// An internal invariant that should hold for every input was violated.
// CLI exit code 3.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace jetcc
