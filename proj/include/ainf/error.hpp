#pragma once

#include <stdexcept>
#include <string>

namespace ainf {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input document does not match the schema (CLI exit code 2).
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Operation is not available over the requested base ring (exit code 3).
class UnsupportedRing : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold (exit code 4).
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch or other misuse of the linear-algebra layer.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ainf
