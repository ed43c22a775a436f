#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opuc/measures.hpp"
#include "opuc/numeric.hpp"
#include "opuc/sequence.hpp"

namespace opuc {

/// ‖∂̄^j k_{1,μ,n}‖² in L²(μ), held as a natural log.
struct KernelNorm {
  std::size_t n = 0;
  int j = 0;
  double log_value = -kInf;

  double value() const;
  double log10_value() const;
};

/// Coefficients of k_{ζ,μ,n}(z) = Σ_{r<=n} Φ_r(z) conj(Φ_r(ζ)) / π_r. Requires n <= N.
std::vector<Complex> cd_kernel(const CoefficientSequence& alpha, Complex zeta, std::size_t n);

/// Σ_{r=j}^{n} h(r) ((j!/2^j) B_j(r))², with B_j the chain sums; Σ_{r<=n} h(r) for j = 0.
/// Requires j <= n <= N.
KernelNorm kernel_norm_mu(const CoefficientSequence& alpha, std::size_t n, int j);
Rational kernel_norm_mu(std::span<const Rational> alpha, std::size_t n, int j);

struct LebesgueNorm {
  KernelNorm norm;          // Σ_{r=j}^{n} kappa_j(r)²
  double log_bound = 0.0;   // log((n/j) kappa_j(n)²); +inf for j = 0
  bool within_bound = true;
};

LebesgueNorm kernel_norm_lebesgue(std::size_t n, int j);
BigInt kernel_norm_lebesgue_exact(std::size_t n, int j);

/// (n+1)×(n+1) matrix T_{l,i} = ŵ(l - i), row-major, so (p, q)_μ = q^H T p.
struct ToeplitzOperator {
  std::size_t n = 0;
  std::vector<Complex> entries;

  std::size_t dim() const { return n + 1; }
  Complex operator()(std::size_t l, std::size_t i) const { return entries[l * dim() + i]; }
  bool is_hermitian(double tol) const;
};

/// Requires n <= moments.bandwidth.
ToeplitzOperator toeplitz_matrix(const MomentTable& moments, std::size_t n);

/// Solves T x = (conj(ζ)^r)_r. Throws NumericalFailure when T is not positive definite.
std::vector<Complex> toeplitz_kernel(const MomentTable& moments, Complex zeta, std::size_t n);

double toeplitz_min_eigenvalue(const MomentTable& moments, std::size_t n);

/// log of ‖∂̄^j k_μ‖² ‖∂̄^j k_{μ₋₁}‖² / ‖∂̄^j k_m‖⁴.
double lemma7_ratio(const CoefficientSequence& mu, const CoefficientSequence& mu_minus, std::size_t n,
                    int j);

/// (p, q)_μ = Σ_{i,l} p_i conj(q_l) ŵ(l - i). Degrees must not exceed the bandwidth.
Complex inner_product(const MomentTable& moments, std::span<const Complex> p, std::span<const Complex> q);

/// (1/G) Σ_j w(θ_j) p(e^{iθ_j}) conj(q(e^{iθ_j})) on the samples' grid.
Complex inner_product(std::span<const double> weight_samples, std::span<const Complex> p,
                      std::span<const Complex> q);

/// log of e^{G_{h,n,j}} kappa_j(n_j)² / 4^j Σ_{r=n_j}^{n} h(r), the lower bound in which every
/// r shares the chain average taken at t_0 = n_j. Requires 1 <= j <= n/2.
double log_kernel_lower_bound(const CoefficientSequence& alpha, std::size_t n, int j);

/// log of Σ_{r=n_j}^{n} h(r) kappa_j(r)² / 4^j e^{G_r}, where G_r is the chain average at t_0 = r.
double log_kernel_lower_bound_per_r(const CoefficientSequence& alpha, std::size_t n, int j);

}  // namespace opuc
