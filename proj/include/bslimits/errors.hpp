#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bslimits {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a residue is not known to enough m-adic digits for the
/// requested computation. `needed()` is the smallest precision that works.
class InsufficientPrecision : public Error {
 public:
  InsufficientPrecision(unsigned needed, unsigned available)
      : Error("insufficient precision: need " + std::to_string(needed) +
              " m-adic digits, have " + std::to_string(available)),
        needed_(needed),
        available_(available) {}

  unsigned needed() const noexcept { return needed_; }
  unsigned available() const noexcept { return available_; }

 private:
  unsigned needed_;
  unsigned available_;
};

class ZeroModulus : public Error {
 public:
  ZeroModulus() : Error("modulus must be non-zero") {}
};

class NotADivisor : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroRing : public Error {
 public:
  ZeroRing() : Error("operation undefined on the zero ring Z_{+-1}") {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error("syntax error at position " + std::to_string(position) + ": " +
              what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class InsufficientLevel : public Error {
 public:
  InsufficientLevel(std::size_t a_length, unsigned level)
      : Error("a-length " + std::to_string(a_length) +
              " exceeds twice the engine level " + std::to_string(level)) {}
};

class NotInClass : public Error {
 public:
  using Error::Error;
};

class NonUnit : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that should be impossible to break was broken.
class InternalInvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace bslimits
