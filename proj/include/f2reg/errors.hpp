#pragma once

#include <stdexcept>
#include <string>

namespace f2reg {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different ambient spaces.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A dense materialization (2^k objects) or an explicit cap was refused.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A verified mathematical claim failed. Carries a human readable certificate.
class ClaimViolation : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling for a spanning family ran out of attempts.
class RetryCapExceeded : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  enum class Kind { kMalformedHeader, kTruncatedPayload, kValueOutOfRange, kIo };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace f2reg
