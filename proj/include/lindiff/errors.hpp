#pragma once

#include <stdexcept>
#include <string>

namespace lindiff {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (matrix products, projection rank, vector lengths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar or enum argument is outside its domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failure or non-finite values.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix / chain / config file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A report was requested over a set with no usable samples.
class EmptyReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace lindiff
