#include "opuc/derivatives.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "opuc/error.hpp"
#include "opuc/opuc.hpp"
#include "opuc/polynomial.hpp"

namespace opuc {

namespace {

template <class T>
T factorial_as(int j) {
  T out = 1;
  for (int i = 2; i <= j; ++i) out *= T(i);
  return out;
}

template <class T>
T power_of_two(int j) {
  T out = 1;
  for (int i = 0; i < j; ++i) out *= T(2);
  return out;
}

void require_length(std::size_t have, std::size_t need, const char* what) {
  if (have < need) {
    std::ostringstream msg;
    msg << what << " needs " << need << " recurrence coefficients, sequence has " << have;
    throw InvalidArgument(msg.str());
  }
}

void require_order(std::size_t n, int j, int lo) {
  if (j < lo || static_cast<std::size_t>(j) > n + 1) {
    std::ostringstream msg;
    msg << "derivative order j = " << j << " must lie in [" << lo << ", n+1 = " << n + 1 << "]";
    throw InvalidArgument(msg.str());
  }
}

void require_chain_budget(std::size_t items, int j, const char* what) {
  if (chain_count(items, j) > kChainEnumerationLimit) {
    std::ostringstream msg;
    msg << what << ": C(" << items << ", " << j << ") chains exceed the enumeration limit; use lemma2_dp";
    throw InvalidArgument(msg.str());
  }
}

// 1 + h(a)/h(b) for a < b <= top.
template <class T>
class ChainFactors {
 public:
  ChainFactors(std::span<const T> alpha, std::size_t top);
  const T& operator()(std::size_t a, std::size_t b) const { return table_[a * (top_ + 1) + b]; }

 private:
  std::size_t top_;
  std::vector<T> table_;
};

template <>
ChainFactors<double>::ChainFactors(std::span<const double> alpha, std::size_t top)
    : top_(top), table_((top + 1) * (top + 1), 0.0) {
  std::vector<double> log_h(top + 1, 0.0);
  for (std::size_t k = 0; k < top; ++k) log_h[k + 1] = log_h[k] + std::log1p(-alpha[k]) - std::log1p(alpha[k]);
  for (std::size_t b = 0; b <= top; ++b)
    for (std::size_t a = 0; a < b; ++a) table_[a * (top + 1) + b] = 1.0 + std::exp(log_h[a] - log_h[b]);
}

template <>
ChainFactors<Rational>::ChainFactors(std::span<const Rational> alpha, std::size_t top)
    : top_(top), table_((top + 1) * (top + 1)) {
  std::vector<Rational> h(top + 1);
  h[0] = 1;
  for (std::size_t k = 0; k < top; ++k) h[k + 1] = h[k] * (1 - alpha[k]) / (1 + alpha[k]);
  for (std::size_t b = 0; b <= top; ++b)
    for (std::size_t a = 0; a < b; ++a) table_[a * (top + 1) + b] = 1 + h[a] / h[b];
}

template <class T>
void walk_multi_indices(std::span<const T> alpha, std::size_t k, std::size_t n, int ones, int target,
                        const T& x, const T& y, std::vector<std::array<T, 2>>& acc) {
  if (k == n + 1) {
    acc[static_cast<std::size_t>(ones)][0] += x;
    acc[static_cast<std::size_t>(ones)][1] += y;
    return;
  }
  const T& a = alpha[k];
  const long after = static_cast<long>(n) - static_cast<long>(k);  // positions after k
  // gamma_k = 0: T(a) (x, y)
  if (target < 0 || after >= target - ones) {
    T nx = x - a * y;
    T ny = y - a * x;
    walk_multi_indices(alpha, k + 1, n, ones, target, nx, ny, acc);
  }
  // gamma_k = 1: Q(a) (x, y) = (x, -a x)
  if (target < 0 || ones < target) {
    T ny = -a * x;
    walk_multi_indices(alpha, k + 1, n, ones + 1, target, x, ny, acc);
  }
}

template <class T>
void walk_chains(const ChainFactors<T>& f, std::size_t prev, int depth, int max_depth, bool prune, const T& product,
                 std::vector<T>& acc) {
  acc[static_cast<std::size_t>(depth)] += product;
  if (depth == max_depth) return;
  const auto floor_t = prune ? static_cast<std::size_t>(max_depth - depth - 1) : std::size_t{0};
  for (std::size_t t = floor_t; t < prev; ++t) {
    T next = product * f(t, prev);
    walk_chains(f, t, depth + 1, max_depth, prune, next, acc);
  }
}

template <class T>
T prefactor(std::span<const T> alpha, std::size_t n, int j) {
  T p = factorial_as<T>(j) / power_of_two<T>(j);
  for (std::size_t t = 0; t <= n; ++t) p *= T(1 - alpha[t]);
  return p;
}

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

BigInt kappa(int j, long r) {
  if (j < 0) throw InvalidArgument("kappa needs j >= 0");
  if (r < j) return 0;
  BigInt out = 1;
  for (long i = 0; i < j; ++i) out *= r - i;
  return out;
}

double log_kappa(int j, long r) {
  if (r < j) return -kInf;
  if (j <= 64) {
    double acc = 0.0;
    for (long i = 0; i < j; ++i) acc += std::log(static_cast<double>(r - i));
    return acc;
  }
  return log_factorial(static_cast<double>(r)) - log_factorial(static_cast<double>(r - j));
}

double chain_count(std::size_t items, int j) {
  if (j < 0 || static_cast<std::size_t>(j) > items) return 0.0;
  const double n = static_cast<double>(items);
  return std::round(std::exp(log_factorial(n) - log_factorial(j) - log_factorial(n - j)));
}

long reduced_index(long n, int j) { return (static_cast<long>(j) * n) / (j + 1); }

int MultiIndex::weight() const {
  int w = 0;
  for (auto g : gamma) w += g;
  return w;
}

void for_each_multi_index(std::size_t n, int j, const std::function<void(const MultiIndex&)>& visit) {
  if (j < 0 || static_cast<std::size_t>(j) > n + 1) return;
  MultiIndex idx;
  idx.gamma.assign(n + 1, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == n + 1) {
      if (left == 0) visit(idx);
      return;
    }
    if (n + 1 - k > static_cast<std::size_t>(left)) {
      idx.gamma[k] = 0;
      rec(k + 1, left);
    }
    if (left > 0) {
      idx.gamma[k] = 1;
      rec(k + 1, left - 1);
      idx.gamma[k] = 0;
    }
  };
  rec(0, j);
}

template <class T>
std::pair<T, T> lemma1_derivative(std::span<const T> alpha, std::size_t n, int j) {
  if (n > kMultiIndexMaxDegree) {
    std::ostringstream msg;
    msg << "multi-index enumeration is limited to n <= " << kMultiIndexMaxDegree << " (got " << n
        << "); use the nested-sum evaluators";
    throw InvalidArgument(msg.str());
  }
  require_order(n, j, 0);
  require_length(alpha.size(), n + 1, "lemma1_derivative");
  std::vector<std::array<T, 2>> acc(n + 2, {T(0), T(0)});
  walk_multi_indices(alpha, 0, n, 0, j, T(1), T(1), acc);
  const T jf = factorial_as<T>(j);
  auto& slot = acc[static_cast<std::size_t>(j)];
  return {T(slot[0] * jf), T(slot[1] * jf)};
}

template <class T>
std::vector<std::pair<T, T>> lemma1_all_orders(std::span<const T> alpha, std::size_t n) {
  if (n > kMultiIndexMaxDegree) {
    std::ostringstream msg;
    msg << "multi-index enumeration is limited to n <= " << kMultiIndexMaxDegree << " (got " << n << ")";
    throw InvalidArgument(msg.str());
  }
  require_length(alpha.size(), n + 1, "lemma1_all_orders");
  std::vector<std::array<T, 2>> acc(n + 2, {T(0), T(0)});
  walk_multi_indices(alpha, 0, n, 0, -1, T(1), T(1), acc);
  std::vector<std::pair<T, T>> out;
  out.reserve(n + 2);
  T jf = 1;
  for (std::size_t j = 0; j <= n + 1; ++j) {
    if (j >= 2) jf *= T(static_cast<long>(j));
    out.emplace_back(T(acc[j][0] * jf), T(acc[j][1] * jf));
  }
  return out;
}

template <class T>
T lemma2_naive(std::span<const T> alpha, std::size_t n, int j) {
  require_order(n, j, 1);
  require_length(alpha.size(), n + 1, "lemma2_naive");
  require_chain_budget(n + 1, j, "lemma2_naive");
  ChainFactors<T> f(alpha, n + 1);
  std::vector<T> acc(static_cast<std::size_t>(j) + 1, T(0));
  walk_chains(f, n + 1, 0, j, true, T(1), acc);
  return T(prefactor(alpha, n, j) * acc[static_cast<std::size_t>(j)]);
}

template <class T>
std::vector<T> lemma2_naive_all_orders(std::span<const T> alpha, std::size_t n) {
  require_length(alpha.size(), n + 1, "lemma2_naive_all_orders");
  if (std::ldexp(1.0, static_cast<int>(n + 1)) > kChainEnumerationLimit)
    throw InvalidArgument("lemma2_naive_all_orders: 2^(n+1) chains exceed the enumeration limit");
  ChainFactors<T> f(alpha, n + 1);
  const int jmax = static_cast<int>(n + 1);
  std::vector<T> acc(n + 2, T(0));
  walk_chains(f, n + 1, 0, jmax, false, T(1), acc);
  std::vector<T> out(n + 2);
  for (int j = 0; j <= jmax; ++j) out[static_cast<std::size_t>(j)] = prefactor(alpha, n, j) * acc[static_cast<std::size_t>(j)];
  return out;
}

std::vector<double> log_chain_sums(const CoefficientSequence& alpha, std::size_t t_max, int j) {
  if (j < 0) throw InvalidArgument("chain length must be non-negative");
  require_length(alpha.size(), t_max, "log_chain_sums");
  std::vector<double> log_rho(t_max);
  for (std::size_t t = 0; t < t_max; ++t) log_rho[t] = std::log1p(alpha[t]) - std::log1p(-alpha[t]);
  std::vector<double> prev(t_max + 1, 0.0);
  std::vector<double> cur(t_max + 1);
  for (int m = 1; m <= j; ++m) {
    double p = -kInf;
    double s = -kInf;
    cur[0] = -kInf;
    for (std::size_t t = 0; t < t_max; ++t) {
      const double b = prev[t];
      if (b != -kInf) {
        p = log_add_exp(p, b);
        s = log_add_exp(s, b);
      }
      s += log_rho[t];
      cur[t + 1] = log_add_exp(p, s);
    }
    std::swap(prev, cur);
  }
  return prev;
}

std::vector<Rational> chain_sums(std::span<const Rational> alpha, std::size_t t_max, int j) {
  if (j < 0) throw InvalidArgument("chain length must be non-negative");
  require_length(alpha.size(), t_max, "chain_sums");
  std::vector<Rational> rho(t_max);
  for (std::size_t t = 0; t < t_max; ++t) rho[t] = (1 + alpha[t]) / (1 - alpha[t]);
  std::vector<Rational> prev(t_max + 1, Rational(1));
  std::vector<Rational> cur(t_max + 1);
  for (int m = 1; m <= j; ++m) {
    Rational p = 0;
    Rational s = 0;
    cur[0] = 0;
    for (std::size_t t = 0; t < t_max; ++t) {
      p += prev[t];
      s = rho[t] * (s + prev[t]);
      cur[t + 1] = p + s;
    }
    std::swap(prev, cur);
  }
  return prev;
}

SignedLog lemma2_dp(const CoefficientSequence& alpha, std::size_t n, int j) {
  require_order(n, j, 1);
  require_length(alpha.size(), n + 1, "lemma2_dp");
  auto b = log_chain_sums(alpha, n + 1, j);
  double log_pref = log_factorial(j) - j * std::numbers::ln2;
  for (std::size_t t = 0; t <= n; ++t) log_pref += std::log1p(-alpha[t]);
  const double lb = b[n + 1];
  if (lb == -kInf) return SignedLog::zero();
  return SignedLog::from_log(log_pref + lb);
}

Rational lemma2_dp(std::span<const Rational> alpha, std::size_t n, int j) {
  require_order(n, j, 1);
  require_length(alpha.size(), n + 1, "lemma2_dp");
  auto b = chain_sums(alpha, n + 1, j);
  return prefactor(alpha, n, j) * b[n + 1];
}

template <class T>
T polynomial_derivative(std::span<const T> alpha, std::size_t n, int j) {
  require_length(alpha.size(), n + 1, "polynomial_derivative");
  auto pair = szego_recurrence<T>(alpha, n + 1);
  return derivative_at_one<T>(std::span<const T>(pair.phi), j);
}

double Lemma5Ratio::ratio() const { return std::exp(log_ratio); }

Lemma5Ratio lemma5_ratio(long n, int j) {
  if (j < 1 || 2L * j > n) {
    std::ostringstream msg;
    msg << "lemma5_ratio needs 1 <= j <= n/2 (n = " << n << ", j = " << j << ")";
    throw InvalidArgument(msg.str());
  }
  Lemma5Ratio out;
  out.reduced = reduced_index(n, j);
  if (j <= 64) {
    double acc = 0.0;
    for (long i = 0; i < j; ++i)
      acc += std::log(static_cast<double>(n - i) / static_cast<double>(out.reduced - i));
    out.log_ratio = acc;
  } else {
    out.log_ratio = log_kappa(j, n) - log_kappa(j, out.reduced);
  }
  return out;
}

double g_quantity(const CoefficientSequence& alpha, long n, int j, bool inverted) {
  if (j < 1 || 2L * j > n) {
    std::ostringstream msg;
    msg << "g_quantity needs 1 <= j <= n/2 (n = " << n << ", j = " << j << ")";
    throw InvalidArgument(msg.str());
  }
  return chain_log_average(alpha, reduced_index(n, j), j, inverted);
}

double chain_log_average(const CoefficientSequence& alpha, long top, int j, bool inverted) {
  if (j < 1 || top < j) {
    std::ostringstream msg;
    msg << "chain average needs 1 <= j <= top (top = " << top << ", j = " << j << ")";
    throw InvalidArgument(msg.str());
  }
  require_length(alpha.size(), static_cast<std::size_t>(top), "chain average");
  require_chain_budget(static_cast<std::size_t>(top), j, "chain average");
  auto log_h = alpha.log_h();
  const double sign = inverted ? -1.0 : 1.0;
  double total = 0.0;
  double chains = 0.0;
  std::function<void(long, int, double)> rec = [&](long prev, int depth, double acc) {
    if (depth == j) {
      total += acc;
      chains += 1.0;
      return;
    }
    for (long t = j - depth - 1; t < prev; ++t) {
      const double x = sign * (log_h[static_cast<std::size_t>(t)] - log_h[static_cast<std::size_t>(prev)]);
      rec(t, depth + 1, acc + softplus(x));
    }
  };
  rec(top, 0, 0.0);
  return 2.0 * total / chains;
}

template std::pair<double, double> lemma1_derivative<double>(std::span<const double>, std::size_t, int);
template std::pair<Rational, Rational> lemma1_derivative<Rational>(std::span<const Rational>, std::size_t, int);
template std::vector<std::pair<double, double>> lemma1_all_orders<double>(std::span<const double>, std::size_t);
template std::vector<std::pair<Rational, Rational>> lemma1_all_orders<Rational>(std::span<const Rational>,
                                                                              std::size_t);
template double lemma2_naive<double>(std::span<const double>, std::size_t, int);
template Rational lemma2_naive<Rational>(std::span<const Rational>, std::size_t, int);
template std::vector<double> lemma2_naive_all_orders<double>(std::span<const double>, std::size_t);
template std::vector<Rational> lemma2_naive_all_orders<Rational>(std::span<const Rational>, std::size_t);
template double polynomial_derivative<double>(std::span<const double>, std::size_t, int);
template Rational polynomial_derivative<Rational>(std::span<const Rational>, std::size_t, int);

}  // namespace opuc
