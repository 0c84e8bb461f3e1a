#pragma once

#include <stdexcept>
#include <string>

namespace theta2 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed operator data (non-monotone, out of range, wrong length).
class InvalidOperator : public Error {
 public:
  using Error::Error;
};

// Source/target mismatch in a composite.
class ArityMismatch : public Error {
 public:
  using Error::Error;
};

// Index outside the admissible range for a shape.
class RangeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Subobjects of different ambients combined.
class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

class NotAdmissible : public Error {
 public:
  using Error::Error;
};

}  // namespace theta2
