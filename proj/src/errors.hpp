#pragma once

#include <stdexcept>
#include <string>

namespace fscap {

// Base class for all library errors. Subclasses map 1:1 onto the C API
// status codes in include/fscap/fscap.h.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A point or parameter lies outside its admissible set.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation was asked to exceed its cost cap (entropy depth, matrix size).
class CostError : public Error {
 public:
  using Error::Error;
};

// Optimizer or channel configuration rejected before any work started.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Internal consistency check failed: probabilities out of range, an
// iterative solver that did not converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Supplied convergence constants are inconsistent with the guarantee they
// are supposed to certify.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

}  // namespace fscap
