#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symdyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based; 0 when the error is not tied to a
// line (e.g. a missing vertex row).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A configured resource cap (group size, state-space size, memory) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A trajectory did not return to an earlier orbit within its step budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace symdyn
