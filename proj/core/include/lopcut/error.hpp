#pragma once

#include <stdexcept>
#include <string>

namespace lopcut {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector dimensions do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the operation's domain (e.g. n < 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the callee was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested size exceeds what exhaustive enumeration supports.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// A computed result contradicts a property the library relies on.
class InvariantViolation : public Error {
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

}  // namespace lopcut
