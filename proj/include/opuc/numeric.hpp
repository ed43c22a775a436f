#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace opuc {

using Rational = mpq_class;
using BigInt = mpz_class;
using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double conj_of(double x) { return x; }
inline const Rational& conj_of(const Rational& x) { return x; }
inline Complex conj_of(const Complex& x) { return std::conj(x); }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

/// Builds p/q in canonical form.
Rational make_rational(long p, long q);

/// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
inline double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  return a + std::log1p(std::exp(b - a));
}

/// log(Σ exp(x_i)); -inf for an empty range.
double log_sum_exp(std::span<const double> xs);

/// log n!
inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

/// A real number held as sign and natural log of its magnitude.
///
/// Products of many factors in (0, 2) leave the double range long before
/// the sequences of interest end, so every long product in the library is
/// carried in this form.
struct SignedLog {
  int sign = 0;
  double log_abs = -kInf;

  static SignedLog zero() { return {}; }
  static SignedLog one() { return {1, 0.0}; }
  static SignedLog from_value(double x);
  static SignedLog from_log(double log_abs, int sign = 1) { return {sign, log_abs}; }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  double log10_abs() const { return log_abs / std::log(10.0); }
  bool is_zero() const { return sign == 0; }
  bool is_finite() const { return sign == 0 || std::isfinite(log_abs); }
};

SignedLog operator*(const SignedLog& a, const SignedLog& b);
SignedLog operator/(const SignedLog& a, const SignedLog& b);
SignedLog operator+(const SignedLog& a, const SignedLog& b);
SignedLog operator-(const SignedLog& a);

/// Running sum of doubles whose value() is the correctly rounded exact sum.
///
/// Shewchuk's non-overlapping partials with the final rounding step of
/// Python's math.fsum. Sums that cancel exactly return exactly zero.
class ExactSum {
 public:
  void add(double x);
  double value() const;
  void clear() { partials_.clear(); }

 private:
  std::vector<double> partials_;
};

}  // namespace opuc
