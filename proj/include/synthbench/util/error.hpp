#pragma once

#include <stdexcept>
#include <string>

namespace synthbench {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input files, schema violations, bad column references.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument did not hold (shape, range, count).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure while fitting a model (non-finite loss, singular fit).
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace synthbench
