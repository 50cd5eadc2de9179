#pragma once

#include <stdexcept>
#include <string>

namespace progressive {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values that must share a choice domain do not.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or solver budget would be exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed values: bad symbols, bad rationals, broken schemas.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input data violating a model invariant (e.g. probabilities not summing to 1).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A self-check between two independent computations disagreed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace progressive
