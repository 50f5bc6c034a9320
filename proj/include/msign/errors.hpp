#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msign {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the input was violated (shape, Metzler structure,
/// indefinite entries, enumeration caps, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerically singular matrix or similar breakdown.
class NumericalError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Two routes that must agree by theory returned different answers.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace msign
