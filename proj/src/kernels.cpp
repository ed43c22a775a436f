#include "opuc/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "opuc/derivatives.hpp"
#include "opuc/error.hpp"
#include "opuc/polynomial.hpp"

namespace opuc {

namespace {

void require_norm_range(std::size_t have, std::size_t n, int j) {
  if (j < 0 || static_cast<std::size_t>(j) > n) {
    std::ostringstream msg;
    msg << "kernel norm needs 0 <= j <= n (n = " << n << ", j = " << j << ")";
    throw InvalidArgument(msg.str());
  }
  if (have < n) {
    std::ostringstream msg;
    msg << "kernel norm at n = " << n << " needs " << n << " coefficients, sequence has " << have;
    throw InvalidArgument(msg.str());
  }
}

Eigen::MatrixXcd dense(const ToeplitzOperator& t) {
  const auto d = static_cast<Eigen::Index>(t.dim());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index i = 0; i < d; ++i) m(l, i) = t(static_cast<std::size_t>(l), static_cast<std::size_t>(i));
  return m;
}

}  // namespace

double KernelNorm::value() const { return std::exp(log_value); }
double KernelNorm::log10_value() const { return log_value / std::numbers::ln10; }

std::vector<Complex> cd_kernel(const CoefficientSequence& alpha, Complex zeta, std::size_t n) {
  if (n > alpha.size()) {
    std::ostringstream msg;
    msg << "cd_kernel at n = " << n << " needs " << n << " coefficients, sequence has " << alpha.size();
    throw InvalidArgument(msg.str());
  }
  auto log_pi = alpha.log_pi();
  std::vector<Complex> out(n + 1, Complex(0.0));
  std::vector<Complex> phi{Complex(1.0)};
  std::vector<Complex> star{Complex(1.0)};
  for (std::size_t r = 0;; ++r) {
    const Complex weight = std::conj(evaluate<Complex, Complex>(std::span<const Complex>(phi), zeta)) /
                           std::exp(log_pi[r]);
    for (std::size_t i = 0; i <= r; ++i) out[i] += phi[i] * weight;
    if (r == n) break;
    const double a = alpha[r];
    std::vector<Complex> next_phi(r + 2, Complex(0.0));
    std::vector<Complex> next_star(r + 2, Complex(0.0));
    for (std::size_t i = 0; i <= r + 1; ++i) {
      const Complex shifted = i >= 1 ? phi[i - 1] : Complex(0.0);
      const Complex s = i <= r ? star[i] : Complex(0.0);
      next_phi[i] = shifted - a * s;
      next_star[i] = s - a * shifted;
    }
    phi = std::move(next_phi);
    star = std::move(next_star);
  }
  return out;
}

KernelNorm kernel_norm_mu(const CoefficientSequence& alpha, std::size_t n, int j) {
  require_norm_range(alpha.size(), n, j);
  auto log_h = alpha.log_h();
  std::vector<double> terms;
  terms.reserve(n + 1);
  if (j == 0) {
    for (std::size_t r = 0; r <= n; ++r) terms.push_back(log_h[r]);
  } else {
    auto b = log_chain_sums(alpha, n, j);
    const double log_pref = 2.0 * (log_factorial(j) - j * std::numbers::ln2);
    for (std::size_t r = static_cast<std::size_t>(j); r <= n; ++r)
      if (b[r] != -kInf) terms.push_back(log_h[r] + log_pref + 2.0 * b[r]);
  }
  return {n, j, log_sum_exp(terms)};
}

Rational kernel_norm_mu(std::span<const Rational> alpha, std::size_t n, int j) {
  require_norm_range(alpha.size(), n, j);
  std::vector<Rational> h(n + 1);
  h[0] = 1;
  for (std::size_t k = 0; k < n; ++k) h[k + 1] = h[k] * (1 - alpha[k]) / (1 + alpha[k]);
  Rational total = 0;
  if (j == 0) {
    for (const auto& x : h) total += x;
    return total;
  }
  auto b = chain_sums(alpha, n, j);
  Rational pref = 1;
  for (int i = 2; i <= j; ++i) pref *= i;
  for (int i = 0; i < j; ++i) pref /= 2;
  pref *= pref;
  for (std::size_t r = static_cast<std::size_t>(j); r <= n; ++r) total += h[r] * b[r] * b[r];
  return total * pref;
}

LebesgueNorm kernel_norm_lebesgue(std::size_t n, int j) {
  if (j < 0 || static_cast<std::size_t>(j) > n) throw InvalidArgument("kernel_norm_lebesgue needs 0 <= j <= n");
  std::vector<double> terms;
  terms.reserve(n + 1);
  for (std::size_t r = static_cast<std::size_t>(j); r <= n; ++r)
    terms.push_back(2.0 * log_kappa(j, static_cast<long>(r)));
  LebesgueNorm out;
  out.norm = {n, j, log_sum_exp(terms)};
  if (j == 0) {
    out.log_bound = kInf;
  } else {
    out.log_bound = std::log(static_cast<double>(n) / j) + 2.0 * log_kappa(j, static_cast<long>(n));
    out.within_bound = kernel_norm_lebesgue_exact(n, j) * j <= BigInt(static_cast<unsigned long>(n)) *
                                                                 kappa(j, static_cast<long>(n)) *
                                                                 kappa(j, static_cast<long>(n));
  }
  return out;
}

BigInt kernel_norm_lebesgue_exact(std::size_t n, int j) {
  if (j < 0 || static_cast<std::size_t>(j) > n)
    throw InvalidArgument("kernel_norm_lebesgue_exact needs 0 <= j <= n");
  BigInt total = 0;
  for (std::size_t r = static_cast<std::size_t>(j); r <= n; ++r) {
    BigInt k = kappa(j, static_cast<long>(r));
    total += k * k;
  }
  return total;
}

bool ToeplitzOperator::is_hermitian(double tol) const {
  for (std::size_t l = 0; l < dim(); ++l)
    for (std::size_t i = 0; i <= l; ++i)
      if (std::abs((*this)(l, i) - std::conj((*this)(i, l))) > tol) return false;
  return true;
}

ToeplitzOperator toeplitz_matrix(const MomentTable& moments, std::size_t n) {
  if (n > static_cast<std::size_t>(moments.bandwidth)) {
    std::ostringstream msg;
    msg << "Toeplitz matrix of order " << n << " needs moments to bandwidth " << n << ", table has "
        << moments.bandwidth;
    throw InvalidArgument(msg.str());
  }
  ToeplitzOperator t;
  t.n = n;
  t.entries.resize((n + 1) * (n + 1));
  for (std::size_t l = 0; l <= n; ++l)
    for (std::size_t i = 0; i <= n; ++i)
      t.entries[l * (n + 1) + i] = moments[static_cast<int>(l) - static_cast<int>(i)];
  return t;
}

std::vector<Complex> toeplitz_kernel(const MomentTable& moments, Complex zeta, std::size_t n) {
  const auto t = toeplitz_matrix(moments, n);
  Eigen::LLT<Eigen::MatrixXcd> llt(dense(t));
  if (llt.info() != Eigen::Success)
    throw NumericalFailure("Toeplitz matrix is not positive definite; the moments are not those of a measure");
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n + 1));
  Complex p = 1.0;
  for (std::size_t r = 0; r <= n; ++r) {
    rhs(static_cast<Eigen::Index>(r)) = std::conj(p);
    p *= zeta;
  }
  Eigen::VectorXcd x = llt.solve(rhs);
  return {x.data(), x.data() + x.size()};
}

double toeplitz_min_eigenvalue(const MomentTable& moments, std::size_t n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense(toeplitz_matrix(moments, n)),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalFailure("Toeplitz eigenvalue solve failed");
  return solver.eigenvalues().minCoeff();
}

double lemma7_ratio(const CoefficientSequence& mu, const CoefficientSequence& mu_minus, std::size_t n, int j) {
  const double a = kernel_norm_mu(mu, n, j).log_value;
  const double b = kernel_norm_mu(mu_minus, n, j).log_value;
  const double m = kernel_norm_lebesgue(n, j).norm.log_value;
  return a + b - 2.0 * m;
}

Complex inner_product(const MomentTable& moments, std::span<const Complex> p, std::span<const Complex> q) {
  const std::size_t deg = std::max(p.size(), q.size());
  if (deg > 0 && deg - 1 > static_cast<std::size_t>(moments.bandwidth))
    throw InvalidArgument("inner_product: polynomial degree exceeds the moment bandwidth");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t l = 0; l < q.size(); ++l)
      acc += p[i] * std::conj(q[l]) * moments[static_cast<int>(l) - static_cast<int>(i)];
  return acc;
}

Complex inner_product(std::span<const double> weight_samples, std::span<const Complex> p,
                      std::span<const Complex> q) {
  const std::size_t g = weight_samples.size();
  if (!is_power_of_two(g)) throw InvalidArgument("inner_product: grid size must be a power of two");
  if (std::max(p.size(), q.size()) * 2 > g)
    throw InvalidArgument("inner_product: grid too coarse for the polynomial degrees");
  auto pv = evaluate_on_grid(0, p, g);
  auto qv = evaluate_on_grid(0, q, g);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < g; ++k) acc += weight_samples[k] * pv[k] * std::conj(qv[k]);
  return acc / static_cast<double>(g);
}

double log_kernel_lower_bound(const CoefficientSequence& alpha, std::size_t n, int j) {
  const long nl = static_cast<long>(n);
  const double g = g_quantity(alpha, nl, j, false);
  const long nj = reduced_index(nl, j);
  require_norm_range(alpha.size(), n, j);
  auto log_h = alpha.log_h();
  std::vector<double> terms(log_h.begin() + nj, log_h.begin() + static_cast<long>(n) + 1);
  return g + 2.0 * log_kappa(j, nj) - 2.0 * j * std::numbers::ln2 + log_sum_exp(terms);
}

double log_kernel_lower_bound_per_r(const CoefficientSequence& alpha, std::size_t n, int j) {
  const long nl = static_cast<long>(n);
  if (j < 1 || 2L * j > nl) throw InvalidArgument("kernel lower bound needs 1 <= j <= n/2");
  require_norm_range(alpha.size(), n, j);
  auto log_h = alpha.log_h();
  std::vector<double> terms;
  for (long r = reduced_index(nl, j); r <= nl; ++r)
    terms.push_back(log_h[static_cast<std::size_t>(r)] + 2.0 * log_kappa(j, r) - 2.0 * j * std::numbers::ln2 +
                    chain_log_average(alpha, r, j, false));
  return log_sum_exp(terms);
}

}  // namespace opuc
