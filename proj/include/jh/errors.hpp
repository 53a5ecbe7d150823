#pragma once

#include <stdexcept>
#include <string>

namespace jh {

// Every failure raised by the library derives from Error. The two families
// below map onto the CLI exit codes: violated algebraic claims exit with 2,
// precision shortfalls with 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class NotAUnit : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class IntegralityViolation : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class HomogeneityViolation : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class SupportViolation : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class WrongWeierstrassDegree : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class PatternViolation : public InvariantViolation {
 public:
  PatternViolation(const std::string& what, int index)
      : InvariantViolation(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

// No nonzero pairing inside the scanned window.
class EmptyWindow : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class PrecisionMismatch : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

class NeedsMorePrecision : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

class InsufficientPrecision : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

}  // namespace jh
