#pragma once

#include <stdexcept>
#include <string>

namespace trisq {

/// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedSimplexError : public Error {
 public:
  using Error::Error;
};

/// A vertex assignment that does not send some simplex onto a simplex.
class NonSimplicialError : public Error {
 public:
  NonSimplicialError(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

class DomainMismatchError : public Error {
 public:
  using Error::Error;
};

class NotInComplexError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Raised when an internal invariant (e.g. the carrier condition of a
/// straight-line homotopy) is found broken at evaluation time.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace trisq
