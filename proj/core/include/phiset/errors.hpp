#pragma once

#include <stdexcept>
#include <string>

namespace phiset {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (universe mismatch, index out of range, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied to an object of the wrong evaluation mode.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a constructive operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace phiset
