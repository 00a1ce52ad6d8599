#pragma once

#include <stdexcept>
#include <string>

namespace cra {

// Malformed BDF input. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A transition row or automaton violates a structural invariant.
class InvalidAutomaton : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotStandardizable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotCompletelyReachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured cap (state count, visited pairs, monoid size, level count) was hit.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; never expected on valid input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cra
