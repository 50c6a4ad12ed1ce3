#pragma once

#include <stdexcept>
#include <string>

namespace heckelab {

// Base of every error the library throws on a contract violation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain (t^2 >= 4N, v >= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input (non-discriminant, singular curve, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The requested accuracy cannot be met within the precision budget.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// |E4^3 - E6^2| underflowed the working precision.
class NearCancellationError : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

// A point of the orbit coincides (to working precision) with the target value.
class CoincidenceError : public Error {
 public:
  using Error::Error;
};

class BadReductionError : public Error {
 public:
  using Error::Error;
};

// A verified inequality failed; the message carries the observed ratio.
class ThresholdError : public Error {
 public:
  ThresholdError(const std::string& what, double ratio) : Error(what), ratio_(ratio) {}
  [[nodiscard]] double ratio() const { return ratio_; }

 private:
  double ratio_;
};

}  // namespace heckelab
