#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or state breaks a DensityMatrix / Ket / mixture invariant.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed product-mixture description (weights, normalization, dims).
class InvalidSpec : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NegativeEigenvalue : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedDims : public Error {
 public:
  using Error::Error;
};

/// Unexpected loss of precision (e.g. a relative entropy well below zero).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// State-file syntax or schema error. `where` is a line number or a JSON
/// pointer to the offending field.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace qcorr
