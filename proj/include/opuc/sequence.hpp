#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace opuc {

/// Finite real Verblunsky sequence alpha_0..alpha_{N-1} with alpha_{-1} = 0.
///
/// Derived arrays:
///   s_k    = alpha_0 + ... + alpha_k                  (k < N, correctly rounded)
///   log h(n)  = Σ_{k<n} log((1 - alpha_k) / (1 + alpha_k))   (n <= N)
///   log pi_r  = Σ_{k<r} log(1 - alpha_k^2)                    (r <= N)
/// so h(0) = pi_0 = 1.
class CoefficientSequence {
 public:
  CoefficientSequence() = default;
  /// Throws InvalidArgument unless every |alpha_k| < 1 and finite.
  explicit CoefficientSequence(std::vector<double> alpha);

  std::size_t size() const { return alpha_.size(); }
  bool empty() const { return alpha_.empty(); }
  double operator[](std::size_t k) const { return alpha_[k]; }
  std::span<const double> alpha() const { return alpha_; }

  std::span<const double> partial_sums() const { return s_; }
  std::span<const double> log_h() const { return log_h_; }
  std::span<const double> log_pi() const { return log_pi_; }

  /// h(t) / h(t+1) = (1 + alpha_t) / (1 - alpha_t), t < N.
  double step_ratio(std::size_t t) const;

  /// 2 s_n + log h(n+1) = Σ_{k<=n} (2 alpha_k - log((1+alpha_k)/(1-alpha_k))).
  double two_s_plus_log_h(std::size_t n) const;

  double szego_sum() const { return szego_sum_; }
  double max_abs() const { return max_abs_; }

  CoefficientSequence negated() const;
  /// First n coefficients (n <= size()).
  CoefficientSequence prefix(std::size_t n) const;
  /// Pads with zeros up to length n (n >= size()).
  CoefficientSequence zero_extended(std::size_t n) const;

 private:
  std::vector<double> alpha_;
  std::vector<double> s_;
  std::vector<double> log_h_;
  std::vector<double> log_pi_;
  double szego_sum_ = 0.0;
  double max_abs_ = 0.0;
};

}  // namespace opuc
