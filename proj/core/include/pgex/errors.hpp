#pragma once

#include <stdexcept>
#include <string>

namespace pgex {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller: bad dimensions, out-of-range
/// parameters, non-finite input.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A floating-point quantity became NaN/Inf during a computation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The requested combination of options cannot be honoured, e.g. a duality-gap
/// stopping rule on a problem without a dual.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Too few samples for a statistical fit.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgex
