#include "opuc/opuc.hpp"

#include <cmath>
#include <sstream>

#include "opuc/error.hpp"
#include "opuc/polynomial.hpp"

namespace opuc {

namespace {

template <class T>
using PolyMat = Mat2<std::vector<T>>;

template <class T>
PolyMat<T> poly_mul(const PolyMat<T>& x, const PolyMat<T>& y) {
  auto mul = [](const std::vector<T>& p, const std::vector<T>& q) {
    return multiply<T>(std::span<const T>(p), std::span<const T>(q));
  };
  auto sum = [](const std::vector<T>& p, const std::vector<T>& q) {
    return add<T>(std::span<const T>(p), std::span<const T>(q));
  };
  return {sum(mul(x.a, y.a), mul(x.b, y.c)), sum(mul(x.a, y.b), mul(x.b, y.d)),
          sum(mul(x.c, y.a), mul(x.d, y.c)), sum(mul(x.c, y.b), mul(x.d, y.d))};
}

template <class T>
T coefficient_or_zero(std::span<const T> alpha, std::size_t k) {
  return k < alpha.size() ? alpha[k] : T(0);
}

// T(alpha_{hi-1}, z) ... T(alpha_lo, z)
template <class T>
PolyMat<T> transfer_range(std::span<const T> alpha, std::size_t lo, std::size_t hi) {
  if (hi == lo) return {{T(1)}, {T(0)}, {T(0)}, {T(1)}};
  if (hi - lo == 1) {
    T a = coefficient_or_zero(alpha, lo);
    return {{T(0), T(1)}, {T(-conj_of(a))}, {T(0), T(-a)}, {T(1)}};
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return poly_mul(transfer_range(alpha, mid, hi), transfer_range(alpha, lo, mid));
}

}  // namespace

template <class T>
PolynomialPair<T> szego_recurrence(std::span<const T> alpha, std::size_t n) {
  std::vector<T> phi{T(1)};
  std::vector<T> star{T(1)};
  for (std::size_t k = 0; k < n; ++k) {
    const T a = coefficient_or_zero(alpha, k);
    const T abar = conj_of(a);
    std::vector<T> next_phi(k + 2, T(0));
    std::vector<T> next_star(k + 2, T(0));
    for (std::size_t i = 0; i <= k + 1; ++i) {
      const T shifted = i >= 1 ? phi[i - 1] : T(0);
      const T s = i <= k ? star[i] : T(0);
      next_phi[i] = shifted - abar * s;
      next_star[i] = s - a * shifted;
    }
    phi = std::move(next_phi);
    star = std::move(next_star);
  }
  return {n, std::move(phi), std::move(star)};
}

template <class T>
PolynomialPair<T> transfer_product(std::span<const T> alpha, std::size_t n) {
  PolyMat<T> m = transfer_range(alpha, 0, n);
  std::vector<T> phi = add<T>(std::span<const T>(m.a), std::span<const T>(m.b));
  std::vector<T> star = add<T>(std::span<const T>(m.c), std::span<const T>(m.d));
  phi.resize(n + 1, T(0));
  star.resize(n + 1, T(0));
  return {n, std::move(phi), std::move(star)};
}

template PolynomialPair<double> szego_recurrence<double>(std::span<const double>, std::size_t);
template PolynomialPair<Rational> szego_recurrence<Rational>(std::span<const Rational>, std::size_t);
template PolynomialPair<Complex> szego_recurrence<Complex>(std::span<const Complex>, std::size_t);
template PolynomialPair<double> transfer_product<double>(std::span<const double>, std::size_t);
template PolynomialPair<Rational> transfer_product<Rational>(std::span<const Rational>, std::size_t);
template PolynomialPair<Complex> transfer_product<Complex>(std::span<const Complex>, std::size_t);

SignedLog phi_at_one(const CoefficientSequence& alpha, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n && k < alpha.size(); ++k) acc += std::log1p(-alpha[k]);
  return SignedLog::from_log(acc);
}

Complex phistar_value(const CoefficientSequence& alpha, Complex z) {
  Complex phi = 1.0;
  Complex star = 1.0;
  for (double a : alpha.alpha()) {
    Complex zphi = z * phi;
    phi = zphi - a * star;
    star = star - a * zphi;
  }
  return star;
}

std::vector<Complex> levinson(const MomentTable& m, std::size_t count) {
  if (count > static_cast<std::size_t>(m.bandwidth)) {
    std::ostringstream msg;
    msg << "levinson needs bandwidth >= " << count << ", moment table has " << m.bandwidth;
    throw InvalidArgument(msg.str());
  }
  const Complex c0 = m[0];
  if (!(c0.real() > 0.0) || std::abs(c0.imag()) > 1e-12 * c0.real())
    throw IndefiniteMoments(0, "moment table has non-positive mass ŵ(0)");
  auto c = [&](int k) { return m[k] / c0; };

  std::vector<Complex> alpha;
  alpha.reserve(count);
  std::vector<Complex> phi{1.0};
  std::vector<Complex> star{1.0};
  double norm = 1.0;
  for (std::size_t n = 0; n < count; ++n) {
    Complex delta = 0.0;
    for (std::size_t i = 0; i <= n; ++i) delta += phi[i] * c(-static_cast<int>(i + 1));
    const Complex abar = delta / norm;
    const Complex a = std::conj(abar);
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || std::abs(a) >= 1.0) {
      std::ostringstream msg;
      msg << "moment table is not positive definite: |alpha_" << n << "| = " << std::abs(a) << " >= 1";
      throw IndefiniteMoments(n, msg.str());
    }
    alpha.push_back(a);
    std::vector<Complex> next_phi(n + 2);
    std::vector<Complex> next_star(n + 2);
    for (std::size_t i = 0; i <= n + 1; ++i) {
      const Complex shifted = i >= 1 ? phi[i - 1] : 0.0;
      const Complex s = i <= n ? star[i] : 0.0;
      next_phi[i] = shifted - abar * s;
      next_star[i] = s - a * shifted;
    }
    phi = std::move(next_phi);
    star = std::move(next_star);
    norm *= 1.0 - std::norm(a);
  }
  return alpha;
}

CoefficientSequence levinson_real(const MomentTable& m, std::size_t count, double imag_tol) {
  auto a = levinson(m, count);
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k].imag()) > imag_tol) {
      std::ostringstream msg;
      msg << "alpha_" << k << " has imaginary part " << a[k].imag() << "; the weight is not symmetric";
      throw NumericalFailure(msg.str());
    }
    out[k] = a[k].real();
  }
  return CoefficientSequence(std::move(out));
}

Weight bernstein_szego(const CoefficientSequence& alpha) { return Weight::bernstein_szego(alpha); }

MomentTable bernstein_szego_moments(const CoefficientSequence& alpha, int bandwidth) {
  if (bandwidth < 0) throw InvalidArgument("moment bandwidth must be non-negative");
  const std::size_t big_n = alpha.size();
  const auto m = static_cast<std::size_t>(bandwidth);
  // neg[i] = ŵ(-i)
  std::vector<double> neg(m + 1, 0.0);
  neg[0] = 1.0;
  std::vector<double> phi{1.0};
  std::vector<double> star{1.0};
  for (std::size_t n = 0; n < m; ++n) {
    if (n < big_n) {
      const double a = alpha[n];
      double acc = a * std::exp(alpha.log_pi()[n]);
      for (std::size_t i = 0; i < n; ++i) acc -= phi[i] * neg[i + 1];
      neg[n + 1] = acc;
      std::vector<double> next_phi(n + 2);
      std::vector<double> next_star(n + 2);
      for (std::size_t i = 0; i <= n + 1; ++i) {
        const double shifted = i >= 1 ? phi[i - 1] : 0.0;
        const double s = i <= n ? star[i] : 0.0;
        next_phi[i] = shifted - a * s;
        next_star[i] = s - a * shifted;
      }
      phi = std::move(next_phi);
      star = std::move(next_star);
    } else {
      // Φ_n = z^{n-N} Φ_N
      const std::size_t shift = n - big_n;
      double acc = 0.0;
      for (std::size_t i = 0; i < big_n; ++i) acc -= phi[i] * neg[i + shift + 1];
      neg[n + 1] = acc;
    }
  }
  MomentTable out;
  out.bandwidth = bandwidth;
  out.values.resize(2 * m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    out.values[m - k] = neg[k];
    out.values[m + k] = neg[k];
  }
  return out;
}

SignedLog szego_product(const CoefficientSequence& alpha) {
  return SignedLog::from_log(alpha.log_pi()[alpha.size()]);
}

SzegoIntegral szego_integral(const Weight& w, std::size_t grid_size) {
  auto v = w.grid_values(w.natural_grid_size(grid_size));
  SzegoIntegral out;
  ExactSum acc;
  for (double x : v) {
    if (!(x > 0.0)) {
      out.has_zeros = true;
      out.log_value = -kInf;
      out.value = 0.0;
      return out;
    }
    acc.add(std::log(x));
  }
  out.log_value = acc.value() / static_cast<double>(v.size());
  out.value = std::exp(out.log_value);
  return out;
}

}  // namespace opuc
