#pragma once

#include <stdexcept>
#include <string>

namespace emvt {

// Base of every error thrown by the library. The CLI maps subclasses onto
// exit codes (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonPrimeBase : public Error {
 public:
  using Error::Error;
};

class InadmissibleDigits : public Error {
 public:
  using Error::Error;
};

class EmptyProfile : public Error {
 public:
  using Error::Error;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

class NonpositiveCount : public Error {
 public:
  using Error::Error;
};

// Resource errors: exit code 2.
class MemoryBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

// An identity that must hold exactly did not: exit code 3.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Configuration / IO.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class UnknownKey : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace emvt
