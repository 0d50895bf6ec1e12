#pragma once

#include <stdexcept>
#include <string>

namespace kernelsmith {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input: bad files, violated instance invariants,
// out-of-range parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : InputError("dimension mismatch: " + std::to_string(lhs) + " vs " +
                   std::to_string(rhs)) {}
};

// An exhaustive enumeration would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A guaranteed postcondition did not hold. Never expected in practice.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace kernelsmith
