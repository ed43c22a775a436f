#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "opuc/numeric.hpp"
#include "opuc/sequence.hpp"

namespace opuc {

inline constexpr int kDefaultGridLog2 = 14;
inline constexpr std::size_t kDefaultGridSize = std::size_t{1} << kDefaultGridLog2;

/// 2^OPUC_GRID_LOG2 when the variable is set (4..24), else 2^14.
std::size_t default_grid_size();

/// Fourier moments ŵ(k) = ∫ w z̄^k dm for |k| <= bandwidth.
struct MomentTable {
  int bandwidth = 0;
  std::vector<Complex> values;  // ŵ(-M) .. ŵ(M)

  Complex operator[](int k) const { return values[static_cast<std::size_t>(k + bandwidth)]; }
  bool is_hermitian(double tol) const;
  bool is_real(double tol) const;
};

/// Σ_{k=lo}^{hi} c_k e^{ikθ} with complex coefficients.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(int min_degree, std::vector<Complex> coefficients);

  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;
  Complex coefficient(int k) const;
  std::span<const Complex> coefficients() const { return coeffs_; }

  Complex operator()(double theta) const;
  /// Values at θ_j = 2πj/G.
  std::vector<Complex> grid_values(std::size_t grid_size) const;

  friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;

 private:
  int min_degree_ = 0;
  std::vector<Complex> coeffs_;
};

/// H f(z) = p.v. ∫ f(ξ) / (1 - ξ̄ z) dm(ξ) on a trigonometric polynomial.
///
/// The kernel 1/(1 - ξ̄z) keeps exactly the modes k >= 0, so this is the
/// analytic (Riesz) projection, not the classical conjugate function.
/// Boundedness of one is equivalent to boundedness of the other only for
/// bounded f.
TrigPolynomial analytic_projection(const TrigPolynomial& f);

/// An absolutely continuous probability measure w dm on the unit circle.
///
/// Weights are normalized to unit mass at construction; scale() keeps the
/// original mass.
class Weight {
 public:
  enum class Kind { grid, trigpoly, bernstein_szego };

  static Weight lebesgue();
  /// Non-negative samples at θ_j = 2πj/G.
  static Weight from_samples(std::vector<double> samples);
  /// Hermitian-symmetric coefficients ŵ(-d)..ŵ(d) of a non-negative trig polynomial.
  static Weight from_fourier(int degree, std::vector<Complex> coefficients);
  /// w(θ) = c_0 + Σ_{k>=1} c_k cos(kθ).
  static Weight from_cosine_series(std::span<const double> c);
  /// w = Π_{k<N}(1 - alpha_k^2) / |Φ*_N|^2.
  static Weight bernstein_szego(const CoefficientSequence& alpha);
  /// w = (1 - a^2) / |1 - a z|^2, the Bernstein–Szegő weight of (a).
  static Weight poisson(double a);

  Kind kind() const;
  double scale() const { return scale_; }
  bool symmetric() const;

  /// Normalized density at e^{iθ}. Grid weights interpolate linearly.
  double operator()(double theta) const;
  /// Density on θ_j = 2πj/G. Grid weights accept only their own size.
  std::vector<double> grid_values(std::size_t grid_size) const;
  /// Own sample count for grid weights, else `fallback`.
  std::size_t natural_grid_size(std::size_t fallback) const;

  const CoefficientSequence& source() const;
  const TrigPolynomial& trig() const;
  std::span<const double> samples() const;

 private:
  using Data = std::variant<std::vector<double>, TrigPolynomial, CoefficientSequence>;
  Weight(Data data, double scale) : data_(std::move(data)), scale_(scale) {}

  Data data_;
  double scale_ = 1.0;
};

/// ŵ(k), |k| <= M. Exact for trigpoly and Bernstein–Szegő weights; discrete
/// Fourier sums for grid weights, which need at least 4M samples.
MomentTable moments(const Weight& w, int bandwidth);

/// Discrete Fourier sums (1/G) Σ_j x_j e^{-ikθ_j} for |k| <= M, M <= G/4.
MomentTable grid_moments(std::span<const double> samples, int bandwidth);

struct HilbertTransform {
  std::vector<Complex> values;  // on θ_j = 2πj/G
  double sup_norm = 0.0;
};

/// Σ_{k=0}^{M} ŵ(k) z^k on the sample grid.
HilbertTransform hilbert_transform(const Weight& w, int bandwidth, std::size_t grid_size);

/// F(z) = ∫ (ξ + z)/(ξ - z) dμ(ξ) = ŵ(0) + 2 Σ_{k>=1} ŵ(k) z^k.
///
/// The factor 2 without conjugation is the convention for which
/// Re F(re^{iθ}) is the Poisson extension of w; see the regression test.
class CaratheodoryFunction {
 public:
  explicit CaratheodoryFunction(std::vector<Complex> taylor);

  std::span<const Complex> taylor() const { return taylor_; }
  Complex operator()(Complex z) const;
  /// Truncated series on the circle of radius r at θ_j = 2πj/G.
  std::vector<Complex> values_on_circle(double radius, std::size_t grid_size) const;
  double min_real_part(double radius, std::size_t grid_size) const;
  /// c_0 = 1 and Re F >= -tol on radii 0.5, 0.9, 0.99.
  bool satisfies_invariants(std::size_t grid_size, double tol = 1e-12) const;

 private:
  std::vector<Complex> taylor_;
};

CaratheodoryFunction caratheodory(const MomentTable& moments);

struct SteklovInf {
  double inf = 0.0;
  bool steklov = false;  // inf > threshold
};

/// Minimum of w on the grid.
SteklovInf steklov_inf(const Weight& w, double threshold, std::size_t grid_size);

/// Unnormalized DFT, sign -1 forward / +1 backward. Size must be a power of two.
std::vector<Complex> dft(std::vector<Complex> data, int sign);

/// Values of Σ_{k} c_k e^{ikθ_j} on the G-point grid, folding degrees mod G.
std::vector<Complex> evaluate_on_grid(int min_degree, std::span<const Complex> coeffs,
                                      std::size_t grid_size);

bool is_power_of_two(std::size_t n);

}  // namespace opuc
