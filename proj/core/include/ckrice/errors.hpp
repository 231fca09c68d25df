#pragma once

#include <stdexcept>
#include <string>

namespace ckrice {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation at a pole of the function (e.g. log-gamma at 0, -1, ...; zeta at 1).
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain where the method is meaningful.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Iterative method failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Request exceeds a configured resource ceiling.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line number (0 when not line-specific).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

// Value cannot be represented as an ordinary MPFR number.
class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace ckrice
