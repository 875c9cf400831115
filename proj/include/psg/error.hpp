#pragma once

#include <stdexcept>
#include <string>

namespace psg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input shape: out-of-range table entries, wrong widths, bad file syntax.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive sweep or closure would exceed the configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A construction the theory guarantees produced a result that failed its own
// replay. Always signals a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace psg
