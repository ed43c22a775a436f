#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "opuc/numeric.hpp"
#include "opuc/sequence.hpp"

namespace opuc {

/// Largest n for which the multi-index sum is enumerated (C(23, 11) terms).
inline constexpr std::size_t kMultiIndexMaxDegree = 22;
/// Chain enumerations (naive nested sums, G quantity) refuse beyond this many chains.
inline constexpr double kChainEnumerationLimit = 268435456.0;  // 2^28
/// Degree bound for the exact-rational mode.
inline constexpr std::size_t kExactModeMaxDegree = 12;

/// Falling factorial kappa_j(r) = r!/(r-j)! for r >= j, else 0.
BigInt kappa(int j, long r);
/// log kappa_j(r); -inf when r < j.
double log_kappa(int j, long r);

/// Number of strict chains t_0 > t_1 > ... > t_j >= 0 below t_0 = items, i.e. C(items, j).
double chain_count(std::size_t items, int j);

/// n_j = floor((1 - 1/(j+1)) n).
long reduced_index(long n, int j);

/// 0/1 vector gamma_0..gamma_n; weight() = Σ gamma_k.
struct MultiIndex {
  std::vector<std::uint8_t> gamma;
  int weight() const;
};

/// Visits every element of M_{n,j} (length n+1, weight j) in lexicographic order.
void for_each_multi_index(std::size_t n, int j, const std::function<void(const MultiIndex&)>& visit);

/// (Φ_{n+1}^{(j)}(1), Φ*_{n+1}^{(j)}(1)) = j! Σ_{γ ∈ M_{n,j}} Π(γ) (1, 1)^T
/// with Π_0 = T(alpha), Π_1 = Q(alpha). Requires n <= 22 and n+1 coefficients.
template <class T>
std::pair<T, T> lemma1_derivative(std::span<const T> alpha, std::size_t n, int j);

/// Same sum for every j = 0..n+1 from a single walk over all multi-indices.
template <class T>
std::vector<std::pair<T, T>> lemma1_all_orders(std::span<const T> alpha, std::size_t n);

/// Φ_{n+1}^{(j)}(1) from the nested chain sum
///   (j!/2^j) Π_{t<=n}(1 - alpha_t) Σ_{n+1 > t_1 > ... > t_j >= 0} Π_s (1 + h(t_s)/h(t_{s-1})).
/// Refuses when the chain count exceeds kChainEnumerationLimit.
template <class T>
T lemma2_naive(std::span<const T> alpha, std::size_t n, int j);

/// Index j = 0..n+1; entry 0 is Φ_{n+1}(1).
template <class T>
std::vector<T> lemma2_naive_all_orders(std::span<const T> alpha, std::size_t n);

/// Chain sums B_j(t) = Σ_{t > t_1 > ... > t_j >= 0} Π_s (1 + h(t_s)/h(t_{s-1})), t_0 = t,
/// for t = 0..t_max, in log form (-inf where B vanishes). O(t_max * j).
///
/// Recursion: B_0 = 1, B_m(t) = P(t) + S(t) with P(t) = Σ_{u<t} B_{m-1}(u) and
/// S(t) = Σ_{u<t} h(u)/h(t) B_{m-1}(u), S(t+1) = (h(t)/h(t+1)) (S(t) + B_{m-1}(t)).
std::vector<double> log_chain_sums(const CoefficientSequence& alpha, std::size_t t_max, int j);
/// Exact variant of log_chain_sums.
std::vector<Rational> chain_sums(std::span<const Rational> alpha, std::size_t t_max, int j);

/// Φ_{n+1}^{(j)}(1) by the chain-sum recursion. Requires 1 <= j <= n+1 and n+1 coefficients.
SignedLog lemma2_dp(const CoefficientSequence& alpha, std::size_t n, int j);
Rational lemma2_dp(std::span<const Rational> alpha, std::size_t n, int j);

/// j-th derivative at 1 of the coefficient vector of Φ_{n+1}.
template <class T>
T polynomial_derivative(std::span<const T> alpha, std::size_t n, int j);

struct Lemma5Ratio {
  long reduced = 0;  // n_j
  double log_ratio = 0.0;
  double ratio() const;
};

/// kappa_j(n) / kappa_j(n_j), 1 <= j <= n/2.
Lemma5Ratio lemma5_ratio(long n, int j);

/// 2 × the average over chains n_j > t_1 > ... > t_j >= 0 (t_0 = n_j) of
/// Σ_s log(1 + h(t_s)/h(t_{s-1})); with `inverted`, h is replaced by 1/h.
/// Requires 1 <= j <= n/2, n_j <= N and a chain count within the enumeration limit.
double g_quantity(const CoefficientSequence& alpha, long n, int j, bool inverted);

/// The same chain average with an explicit top index t_0 = top (j <= top <= N).
double chain_log_average(const CoefficientSequence& alpha, long top, int j, bool inverted);

}  // namespace opuc
