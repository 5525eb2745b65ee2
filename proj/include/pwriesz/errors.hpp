#pragma once

#include <stdexcept>
#include <string>

namespace pwriesz {

// Base for every error raised by the library. Callers that only care about
// "something in the model was wrong" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation
// (|delta| >= 1/4, exponent outside (-1, 1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An interval union does not have the shape an operation needs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A generating function has no usable split into +/- components.
class StructureError : public Error {
 public:
  using Error::Error;
};

// A documented precondition does not hold (e.g. dividing by a non-zero).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Two sequences that must be uniformly separated are not.
class SeparationError : public Error {
 public:
  using Error::Error;
};

class DuplicatePointError : public Error {
 public:
  using Error::Error;
};

class CapExceededError : public Error {
 public:
  using Error::Error;
};

class SingularSectionError : public Error {
 public:
  using Error::Error;
};

class GridTooCoarseError : public Error {
 public:
  using Error::Error;
};

class InsufficientSpanError : public Error {
 public:
  using Error::Error;
};

class EmptyGridError : public Error {
 public:
  using Error::Error;
};

// Malformed user configuration (JSON, CLI flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pwriesz
