#pragma once

#include <stdexcept>
#include <string>

namespace scarcenet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Incompatible matrix/vector dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Cholesky hit a non-positive pivot; the LM loop raises mu and retries.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

// Malformed CSV or model file; message names the offending row/field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Non-finite value where a finite one is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

class TrainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace scarcenet
