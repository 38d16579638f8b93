#pragma once

#include <stdexcept>
#include <string>

namespace superdescent {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed specs, invalid parameters, failed algebra validation.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A requested enumeration would exceed the configured size bound.
class SizeBoundError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (a mathematical expectation was violated).
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Operands live at different levels (or belong to different towers).
class LevelMismatch : public InputError {
 public:
  using InputError::InputError;
};

class AssocViolation : public InputError {
 public:
  AssocViolation(int i, int j, int k, const std::string& detail)
      : InputError("AssocViolation(" + std::to_string(i) + "," + std::to_string(j) + "," +
                   std::to_string(k) + "): " + detail),
        i_(i),
        j_(j),
        k_(k) {}

  int i() const { return i_; }
  int j() const { return j_; }
  int k() const { return k_; }

 private:
  int i_, j_, k_;
};

class NotNilpotent : public InputError {
 public:
  using InputError::InputError;
};

class NoLanding : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class AmbiguousLanding : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class NotTwistedClassFunction : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

}  // namespace superdescent
