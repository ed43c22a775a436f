#include "opuc/numeric.hpp"

#include <algorithm>
#include <cstdlib>

namespace opuc {

Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

double log_sum_exp(std::span<const double> xs) {
  double top = -kInf;
  for (double x : xs) top = std::max(top, x);
  if (top == -kInf || !std::isfinite(top)) return top;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

SignedLog SignedLog::from_value(double x) {
  if (x == 0.0) return zero();
  return {x > 0 ? 1 : -1, std::log(std::abs(x))};
}

SignedLog operator*(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0 || b.sign == 0) return SignedLog::zero();
  return {a.sign * b.sign, a.log_abs + b.log_abs};
}

SignedLog operator/(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0) return SignedLog::zero();
  return {a.sign * b.sign, a.log_abs - b.log_abs};
}

SignedLog operator-(const SignedLog& a) { return {-a.sign, a.log_abs}; }

SignedLog operator+(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.sign == b.sign) return {a.sign, log_add_exp(a.log_abs, b.log_abs)};
  const SignedLog& big = a.log_abs >= b.log_abs ? a : b;
  const SignedLog& small = a.log_abs >= b.log_abs ? b : a;
  double d = small.log_abs - big.log_abs;
  if (d == 0.0) return SignedLog::zero();
  return {big.sign, big.log_abs + std::log1p(-std::exp(d))};
}

void ExactSum::add(double x) {
  std::size_t i = 0;
  for (double y : partials_) {
    if (std::abs(x) < std::abs(y)) std::swap(x, y);
    double hi = x + y;
    double lo = y - (hi - x);
    if (lo != 0.0) partials_[i++] = lo;
    x = hi;
  }
  partials_.resize(i);
  partials_.push_back(x);
}

double ExactSum::value() const {
  std::size_t n = partials_.size();
  if (n == 0) return 0.0;
  double hi = partials_[--n];
  double lo = 0.0;
  while (n > 0) {
    double x = hi;
    double y = partials_[--n];
    hi = x + y;
    double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  // Round half-even across the remaining partials.
  if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
    double y = lo * 2.0;
    double x = hi + y;
    double yr = x - hi;
    if (y == yr) hi = x;
  }
  return hi;
}

}  // namespace opuc
