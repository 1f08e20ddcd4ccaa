#pragma once

#include <stdexcept>
#include <string>

namespace gcp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested atomic state or model option is not covered by the shipped data.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid configuration (empty tables, bad ranges, ...).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Malformed data file; the message carries file and line.
class DataFileError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or series that failed to converge, or produced NaN.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Command-line or config-file problem (maps to exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcp
