// Core value types shared by every evaluation routine.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace xishift {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// A complex number together with an estimated bound on its absolute error.
class ComplexValue {
 public:
  ComplexValue() = default;
  ComplexValue(cplx value, double abs_err) : value_(value), abs_err_(abs_err) {
    if (!(abs_err_ >= 0.0) || !std::isfinite(abs_err_)) abs_err_ = std::numeric_limits<double>::infinity();
  }

  [[nodiscard]] cplx value() const { return value_; }
  [[nodiscard]] double re() const { return value_.real(); }
  [[nodiscard]] double im() const { return value_.imag(); }
  [[nodiscard]] double abs_err() const { return abs_err_; }
  [[nodiscard]] double abs() const { return std::abs(value_); }

  friend ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
    const cplx v = a.value_ + b.value_;
    return {v, a.abs_err_ + b.abs_err_ + kEps * std::abs(v)};
  }
  friend ComplexValue operator-(const ComplexValue& a, const ComplexValue& b) {
    const cplx v = a.value_ - b.value_;
    return {v, a.abs_err_ + b.abs_err_ + kEps * std::abs(v)};
  }
  friend ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
    const cplx v = a.value_ * b.value_;
    return {v, std::abs(a.value_) * b.abs_err_ + std::abs(b.value_) * a.abs_err_ + a.abs_err_ * b.abs_err_ +
                   2 * kEps * std::abs(v)};
  }
  /// Scaling by an exactly known constant.
  friend ComplexValue operator*(cplx c, const ComplexValue& a) {
    const cplx v = c * a.value_;
    return {v, std::abs(c) * a.abs_err_ + 2 * kEps * std::abs(v)};
  }
  [[nodiscard]] ComplexValue conj() const { return {std::conj(value_), abs_err_}; }

 private:
  cplx value_{0.0, 0.0};
  double abs_err_ = 0.0;
};

/// Accuracy and effort knobs for series evaluations.
struct EvalConfig {
  double target_abs_err = 1e-10;
  int max_terms = 1 << 16;
  int em_order = 12;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

class AccuracyError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class UnwrapError : public NumericError {
 public:
  UnwrapError(const std::string& what, double t) : NumericError(what), t_(t) {}
  [[nodiscard]] double where() const { return t_; }

 private:
  double t_;
};

class NonMonotonePhase : public NumericError {
 public:
  using NumericError::NumericError;
};

class InsufficientZeros : public NumericError {
 public:
  using NumericError::NumericError;
};

class ContourTooClose : public NumericError {
 public:
  using NumericError::NumericError;
};

class IncompatibleRanges : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Reduces an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, 2 * kPi);
  if (a <= -kPi) a += 2 * kPi;
  return a;
}

}  // namespace xishift
