#pragma once

#include <stdexcept>
#include <string>

namespace tabwm {

// Root of every error the library throws. Callers that only need to
// distinguish "the toolkit refused" from everything else catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural mismatch: wrong lengths, missing or duplicate columns,
// malformed key fields.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Value outside the domain of an operation (non-finite input, probability
// outside (0,1), count larger than n, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed CSV / JSON text.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tabwm
