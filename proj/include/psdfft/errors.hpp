#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psdfft {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension or length not accepted by the operation (zero, mismatched,
/// non-power-of-two on the fast path).
class SizeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed input bytes. `offset()` is the byte position where decoding
/// stopped.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A simulated on-chip memory region was asked to hold more points than it
/// was configured with.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Post-condition tolerance violated (e.g. imaginary residue after an
/// inverse transform that should be real).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace psdfft
