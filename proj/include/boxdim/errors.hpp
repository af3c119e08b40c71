#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boxdim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed presentation or family text. `line()` is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Invalid argument or violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or state cap was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Power iteration (or a root search) did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace boxdim
