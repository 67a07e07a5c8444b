#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qalab {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition on an input value.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied function failed (threw or returned a non-finite value).
class InputFunctionError : public Error {
 public:
  InputFunctionError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Evaluation of a rational approximant too close to a zero of its denominator.
class PoleProximityError : public Error {
 public:
  PoleProximityError(const std::string& what, std::complex<double> z) : Error(what), z_(z) {}
  std::complex<double> z() const noexcept { return z_; }

 private:
  std::complex<double> z_;
};

/// A rational approximant whose denominator vanishes on the approximation segment.
class DegenerateApproximantError : public Error {
 public:
  DegenerateApproximantError(const std::string& what, double pole) : Error(what), pole_(pole) {}
  double pole_location() const noexcept { return pole_; }

 private:
  double pole_;
};

class CapacityZeroError : public Error {
 public:
  using Error::Error;
};

class InsufficientEvidenceError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on computed data failed (e.g. an error certificate).
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, int degree) : Error(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an expression, carrying the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Domain violation while evaluating an expression (division by zero, log of a non-positive).
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qalab
