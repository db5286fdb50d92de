#pragma once

#include <stdexcept>
#include <string>

namespace orbitforge {

// Malformed or out-of-contract input (CLI exit code 2).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DuplicatePoint : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class OutOfDomain : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotAFixedPoint : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// An orbit handed to a construction does not have the required type.
class TypeMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// f(J) fails to cover what a construction needs.
class CoverageViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A resource cap was hit. Callers turn this into an Unknown status, never a
// silent truncation (CLI exit code 3).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbitforge
