#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opuc/numeric.hpp"

namespace opuc {

/// Horner evaluation of Σ c_i z^i.
template <class T, class Z>
Z evaluate(std::span<const T> c, Z z) {
  Z acc{};
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + Z(c[i]);
  return acc;
}

/// j-th derivative at z = 1 of Σ c_i z^i, i.e. Σ_i i!/(i-j)! c_i.
template <class T>
T derivative_at_one(std::span<const T> c, int j) {
  T acc = 0;
  for (std::size_t i = static_cast<std::size_t>(j); i < c.size(); ++i) {
    T falling = 1;
    for (int m = 0; m < j; ++m) falling *= T(static_cast<long>(i) - m);
    acc += falling * c[i];
  }
  return acc;
}

/// Coefficients of z^n conj(p(1/z̄)) for deg p <= n.
template <class T>
std::vector<T> reversed_conjugate(std::span<const T> p, std::size_t n) {
  std::vector<T> out(n + 1, T(0));
  for (std::size_t i = 0; i < p.size() && i <= n; ++i) out[n - i] = conj_of(p[i]);
  return out;
}

template <class T>
std::vector<T> multiply(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
  return out;
}

template <class T>
std::vector<T> add(std::span<const T> a, std::span<const T> b) {
  std::vector<T> out(std::max(a.size(), b.size()), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

}  // namespace opuc
