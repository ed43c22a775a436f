#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "opuc/measures.hpp"
#include "opuc/numeric.hpp"
#include "opuc/sequence.hpp"

namespace opuc {

/// Coefficients (low to high) of the monic Φ_n and its reversal Φ*_n.
template <class T>
struct PolynomialPair {
  std::size_t degree = 0;
  std::vector<T> phi;
  std::vector<T> phistar;
};

/// 2x2 matrix [[a, b], [c, d]].
template <class T>
struct Mat2 {
  T a, b, c, d;
};

template <class T>
Mat2<T> operator*(const Mat2<T>& x, const Mat2<T>& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

template <class T>
std::array<T, 2> apply(const Mat2<T>& m, const std::array<T, 2>& v) {
  return {m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]};
}

/// T(alpha, z) = [[z, -conj(alpha)], [-alpha z, 1]].
template <class T>
Mat2<T> transfer_matrix(const T& alpha, const T& z) {
  return {z, T(-conj_of(alpha)), T(-alpha * z), T(1)};
}

/// T(alpha) = T(alpha, 1).
template <class T>
Mat2<T> transfer_matrix(const T& alpha) {
  return transfer_matrix(alpha, T(1));
}

/// Q(alpha) = d/dz T(alpha, z) = [[1, 0], [-alpha, 0]].
template <class T>
Mat2<T> transfer_derivative(const T& alpha) {
  return {T(1), T(0), T(-alpha), T(0)};
}

/// (Φ_n, Φ*_n) by the Szegő recurrence from Φ_0 = Φ*_0 = 1. Coefficients
/// past the end of `alpha` are taken as zero.
template <class T>
PolynomialPair<T> szego_recurrence(std::span<const T> alpha, std::size_t n);

/// Same pair from the product T(alpha_{n-1}, z) ... T(alpha_0, z) (1, 1)^T,
/// formed by balanced splitting of the polynomial matrix product.
template <class T>
PolynomialPair<T> transfer_product(std::span<const T> alpha, std::size_t n);

/// Φ_n(1) = Π_{k<n}(1 - alpha_k) for real coefficients.
SignedLog phi_at_one(const CoefficientSequence& alpha, std::size_t n);

/// Φ*_N(z) by the scalar recurrence, N = alpha.size().
Complex phistar_value(const CoefficientSequence& alpha, Complex z);

/// Verblunsky coefficients alpha_0..alpha_{N-1} of the moment table by the
/// Levinson–Szegő recursion. Throws IndefiniteMoments naming the first index k
/// with |alpha_k| >= 1, and InvalidArgument if N exceeds the bandwidth.
std::vector<Complex> levinson(const MomentTable& moments, std::size_t count);

/// Real-coefficient variant; throws NumericalFailure when some
/// |Im alpha_k| > imag_tol.
CoefficientSequence levinson_real(const MomentTable& moments, std::size_t count,
                                  double imag_tol = 1e-10);

Weight bernstein_szego(const CoefficientSequence& alpha);

/// Exact moments of the Bernstein–Szegő weight, by running the recursion
/// backwards: for n < N the moment ŵ(-(n+1)) is fixed by alpha_n, and past N
/// Φ_n = z^{n-N} Φ_N gives an order-N linear recurrence.
MomentTable bernstein_szego_moments(const CoefficientSequence& alpha, int bandwidth);

/// Π_k (1 - alpha_k^2).
SignedLog szego_product(const CoefficientSequence& alpha);

struct SzegoIntegral {
  double value = 0.0;      // exp(∫ log w dm); 0 when w vanishes on the grid
  double log_value = 0.0;  // -inf when w vanishes on the grid
  bool has_zeros = false;
};

SzegoIntegral szego_integral(const Weight& w, std::size_t grid_size);

}  // namespace opuc
