#pragma once

#include <stdexcept>
#include <string>

namespace hartogs {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or length mismatch between arguments.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain of a function (log of a non-positive
/// value, pole of Gamma, point outside a Cartan or Hartogs domain).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not deliver a trustworthy answer
/// (ill-conditioned metric, step-size underflow, exhausted sampling budget).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction parameters (bad domain sizes, mu <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace hartogs
