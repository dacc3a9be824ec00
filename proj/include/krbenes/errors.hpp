#pragma once

#include <stdexcept>
#include <string>

namespace krbenes {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line count is not a power of two, or below the network's minimum.
class InvalidSize : public Error {
 public:
  using Error::Error;
};

/// Band width is zero, not a power of two, or otherwise malformed.
class InvalidBandWidth : public Error {
 public:
  using Error::Error;
};

/// Band width is well formed but the network cannot be built for it
/// (a K-Benes needs k <= n/4; larger k falls back to the full Benes).
class UnsupportedBandWidth : public Error {
 public:
  using Error::Error;
};

class NotKBounded : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (permutation lists, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A plan or network document that does not describe the object it claims.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A plan whose settings cannot be replayed (e.g. an unused switch on a path).
class CorruptPlan : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

/// Raised when a structural guarantee the routing relies on fails to hold.
/// Never expected to fire; tests treat it as a failure.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace krbenes
