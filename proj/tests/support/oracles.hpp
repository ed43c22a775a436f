#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// Φ_0 .. Φ_n from Φ_{r+1}(z) = z Φ_r(z) - α_r Φ*_r(z), real coefficients.
template <class T>
std::vector<std::vector<T>> monic_family(const std::vector<T>& alpha, std::size_t n) {
  std::vector<std::vector<T>> out;
  std::vector<T> phi{T(1)};
  for (std::size_t r = 0;; ++r) {
    out.push_back(phi);
    if (r == n) break;
    std::vector<T> next(r + 2, T(0));
    for (std::size_t i = 0; i <= r; ++i) {
      next[i + 1] += phi[i];
      next[i] -= alpha[r] * phi[r - i];  // Φ*_r has reversed coefficients
    }
    phi = next;
  }
  return out;
}

// j-th derivative at 1, term by term.
template <class T>
T derivative_at_one(const std::vector<T>& c, int j) {
  T acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (static_cast<int>(i) < j) continue;
    T f = 1;
    for (int m = 0; m < j; ++m) f *= T(static_cast<long>(i) - m);
    acc += f * c[i];
  }
  return acc;
}

// Σ_{r<=n} |Φ_r^{(j)}(1)|² / π_r.
template <class T>
T kernel_norm(const std::vector<T>& alpha, std::size_t n, int j) {
  const auto phis = monic_family(alpha, n);
  T pi = 1;
  T total = 0;
  for (std::size_t r = 0; r <= n; ++r) {
    const T d = derivative_at_one(phis[r], j);
    total += d * d / pi;
    if (r < n) pi *= T(1 - alpha[r] * alpha[r]);
  }
  return total;
}

// (avg e^{2s})(avg e^{-2s}) over [l, n), plain loop.
inline double window_product(const std::vector<double>& s, std::size_t l, std::size_t n) {
  double a = 0.0;
  double b = 0.0;
  for (std::size_t k = l; k < n; ++k) {
    a += std::exp(2.0 * s[k]);
    b += std::exp(-2.0 * s[k]);
  }
  const double len = static_cast<double>(n - l);
  return (a / len) * (b / len);
}

inline double window_oscillation(const std::vector<double>& s, std::size_t l, std::size_t n) {
  double mean = 0.0;
  for (std::size_t k = l; k < n; ++k) mean += s[k];
  mean /= static_cast<double>(n - l);
  double acc = 0.0;
  for (std::size_t k = l; k < n; ++k) acc += std::abs(s[k] - mean);
  return acc / static_cast<double>(n - l);
}

inline std::vector<double> partial_sums(const std::vector<double>& a) {
  std::vector<double> s(a.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s[k] = acc += a[k];
  return s;
}

// Random p/q with 1 <= q <= 10 and |p/q| <= 9/10.
inline std::vector<mpq_class> random_rationals(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> den(1, 10);
  std::vector<mpq_class> out;
  for (std::size_t k = 0; k < n; ++k) {
    const long q = den(rng);
    const long pmax = (9 * q) / 10;
    std::uniform_int_distribution<long> num(-pmax, pmax);
    mpq_class v(num(rng), q);
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

inline std::vector<double> random_reals(std::mt19937_64& rng, std::size_t n, double amplitude) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::vector<double> out(n);
  for (auto& x : out) x = u(rng);
  return out;
}

inline double relative_error(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

}  // namespace oracle
