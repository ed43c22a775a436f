// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Detail lines (indented) record the measured quantities behind each verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "opuc/constructions.hpp"
#include "opuc/derivatives.hpp"
#include "opuc/diagnostics.hpp"
#include "opuc/kernels.hpp"
#include "opuc/opuc.hpp"
#include "opuc/presets.hpp"
#include "oracles.hpp"

using namespace opuc;

namespace {

// Pinned tolerances.
constexpr double kFloatDerivativeTol = 1e-9;
constexpr double kKernelNormTol = 1e-9;
constexpr double kToeplitzTol = 1e-8;
constexpr double kEigenSlack = 1e-6;
constexpr double kLevinsonTol = 1e-9;
constexpr double kSecondKindTol = 1e-7;
constexpr double kSzegoTol = 1e-9;
constexpr double kRoundTripAmplitude = 0.5;
constexpr double kSecondKindAmplitude = 0.8;
constexpr std::size_t kSzegoGrid = std::size_t{1} << 20;
constexpr double kLemma5Cap = 50.0;
constexpr double kBaxterDrift = 0.05;
constexpr double kExampleFactor = 10.0;
constexpr double kProp2RatioLo = 0.45;
constexpr double kProp2RatioHi = 0.55;
constexpr double kProp2WitnessLevel = 1e-2;
constexpr double kCriterion1Seconds = 60.0;
constexpr double kDpSeconds = 1.0;
constexpr double kDiagnosticsSeconds = 10.0;

constexpr std::uint64_t kSeed = 20240601;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void detail(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

int failures = 0;

void verdict(int id, bool ok, const char* title) {
  std::printf("%s [%d] %s\n", ok ? "PASS" : "FAIL", id, title);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::vector<double> to_double(const std::vector<Rational>& q) {
  std::vector<double> d;
  for (const auto& x : q) d.push_back(x.get_d());
  return d;
}

// 1. Derivative formula equivalence.
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed);
  long exact_checks = 0;
  long exact_mismatch = 0;
  double worst_float = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto q = oracle::random_rationals(rng, 23);
    std::span<const Rational> qs(q);
    const auto d = to_double(q);
    std::span<const double> ds(d);
    const CoefficientSequence seq(d);
    const auto phis = oracle::monic_family(q, 23);
    for (std::size_t n = 0; n <= 22; ++n) {
      const auto& phi = phis[n + 1];
      if (n <= 12) {
        for (int j = 1; j <= static_cast<int>(n) + 1; ++j) {
          const Rational want = oracle::derivative_at_one(phi, j);
          const bool ok = lemma1_derivative<Rational>(qs, n, j).first == want && lemma2_naive<Rational>(qs, n, j) == want &&
                          lemma2_dp(qs, n, j) == want && polynomial_derivative<Rational>(qs, n, j) == want;
          ++exact_checks;
          if (!ok) ++exact_mismatch;
        }
      }
      const auto l1 = lemma1_all_orders<double>(ds, n);
      const auto l2 = lemma2_naive_all_orders<double>(ds, n);
      for (int j = 1; j <= static_cast<int>(n) + 1; ++j) {
        const double want = oracle::derivative_at_one(phi, j).get_d();
        const auto ju = static_cast<std::size_t>(j);
        worst_float = std::max({worst_float, oracle::relative_error(l1[ju].first, want),
                                oracle::relative_error(l2[ju], want),
                                oracle::relative_error(lemma2_dp(seq, n, j).value(), want),
                                oracle::relative_error(polynomial_derivative<double>(ds, n, j), want)});
      }
    }
  }
  const double secs = seconds_since(t0);
  detail("exact: %ld (n, j, alpha) cases, %ld mismatches", exact_checks, exact_mismatch);
  detail("float: worst relative error %.3e up to n = 22 (tol %.0e)", worst_float, kFloatDerivativeTol);
  detail("runtime %.2f s (limit %.0f s)", secs, kCriterion1Seconds);
  verdict(1, exact_mismatch == 0 && worst_float <= kFloatDerivativeTol && secs < kCriterion1Seconds,
          "derivative formulas: multi-index = nested sum = recursion = direct differentiation");
}

// 2. Kernel-norm equivalence.
void criterion2() {
  std::mt19937_64 rng(kSeed + 2);
  double worst = 0.0;
  bool exact_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = oracle::random_rationals(rng, 60);
    const CoefficientSequence seq(to_double(q));
    // exact rational mirror of the float input
    std::vector<Rational> qd;
    for (double x : seq.alpha()) qd.emplace_back(x);
    for (std::size_t n : {1u, 5u, 12u, 25u, 40u, 60u}) {
      for (int j = 0; j <= 5 && j <= static_cast<int>(n); ++j) {
        const double want = oracle::kernel_norm(qd, n, j).get_d();
        worst = std::max(worst, oracle::relative_error(kernel_norm_mu(seq, n, j).value(), want));
        if (n <= 12 && kernel_norm_mu(std::span<const Rational>(q), n, j) != oracle::kernel_norm(q, n, j))
          exact_ok = false;
      }
    }
  }
  bool lebesgue_exact = true;
  double lebesgue_float = 0.0;
  std::vector<Rational> zeros(60, Rational(0));
  const CoefficientSequence zero(std::vector<double>(60, 0.0));
  for (std::size_t n = 0; n <= 60; ++n) {
    for (int j = 0; j <= 5 && j <= static_cast<int>(n); ++j) {
      const BigInt leb = kernel_norm_lebesgue_exact(n, j);
      if (kernel_norm_mu(std::span<const Rational>(zeros), n, j) != Rational(leb)) lebesgue_exact = false;
      lebesgue_float = std::max(lebesgue_float, std::abs(kernel_norm_mu(zero, n, j).log_value -
                                                          kernel_norm_lebesgue(n, j).norm.log_value));
    }
  }
  detail("float vs exact Σ|Φ_r^(j)(1)|²/π_r: worst relative error %.3e (tol %.0e)", worst, kKernelNormTol);
  detail("rational mode n <= 12 exact: %s; alpha = 0 equals Lebesgue closed form exactly: %s", exact_ok ? "yes" : "no",
         lebesgue_exact ? "yes" : "no");
  detail("alpha = 0 float log difference %.3e", lebesgue_float);
  verdict(2, worst <= kKernelNormTol && exact_ok && lebesgue_exact, "kernel norm: chain-sum form = derivative-sum form");
}

// 3. Toeplitz identity.
void criterion3() {
  std::mt19937_64 rng(kSeed + 3);
  double worst = 0.0;
  double eig_gap = kInf;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 30;
    const CoefficientSequence a(oracle::random_reals(rng, n, 0.5));
    const MomentTable m = bernstein_szego_moments(a, static_cast<int>(n));
    for (Complex zeta : {Complex(1.0), std::polar(0.7, 2.0)}) {
      const auto x = cd_kernel(a, zeta, n);
      const auto y = toeplitz_kernel(m, zeta, n);
      double scale = 0.0;
      double diff = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        scale = std::max(scale, std::abs(x[i]));
        diff = std::max(diff, std::abs(x[i] - y[i]));
      }
      worst = std::max(worst, diff / scale);
    }
    const auto w = Weight::bernstein_szego(a).grid_values(8192);
    const double inf_w = *std::min_element(w.begin(), w.end());
    eig_gap = std::min(eig_gap, toeplitz_min_eigenvalue(m, n) - inf_w);
  }
  const double poisson = toeplitz_min_eigenvalue(moments(Weight::poisson(0.5), 10), 10);
  detail("cd_kernel vs Toeplitz solve: worst relative difference %.3e (tol %.0e)", worst, kToeplitzTol);
  detail("min over tests of (lambda_min - inf w) = %.3e; Poisson a = 1/2, n = 10: lambda_min = %.9f", eig_gap,
         poisson);
  verdict(3, worst <= kToeplitzTol && eig_gap >= -kEigenSlack && poisson >= 1.0 / 3.0 - kEigenSlack,
          "Toeplitz identity and eigenvalue lower bound");
}

// 4. Round trips.
void criterion4() {
  std::mt19937_64 rng(kSeed + 4);
  double lev = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    const CoefficientSequence a(oracle::random_reals(rng, n, kRoundTripAmplitude));
    const auto back = levinson_real(bernstein_szego_moments(a, static_cast<int>(n)), n);
    for (std::size_t k = 0; k < n; ++k) lev = std::max(lev, std::abs(back[k] - a[k]));
  }
  double sk = 0.0;
  for (std::size_t n = 1; n <= 30; ++n) {
    const CoefficientSequence a(oracle::random_reals(rng, n, kSecondKindAmplitude));
    sk = std::max(sk, second_kind(a).max_deviation);
  }
  double szego = 0.0;
  for (std::size_t n = 1; n <= 30; ++n) {
    const CoefficientSequence a(oracle::random_reals(rng, n, kRoundTripAmplitude));
    const auto lhs = szego_integral(Weight::bernstein_szego(a), kSzegoGrid);
    szego = std::max(szego, std::abs(std::exp(lhs.log_value) - std::exp(szego_product(a).log_abs)));
  }
  detail("levinson(moments(BS(alpha))) - alpha, N <= 50, |alpha| <= %.1f: %.3e (tol %.0e)", kRoundTripAmplitude, lev,
         kLevinsonTol);
  detail("second kind via Re(1/F) vs -alpha, N <= 30, |alpha| <= %.1f: %.3e (tol %.0e)", kSecondKindAmplitude, sk,
         kSecondKindTol);
  detail("exp ∫log w dm - Π(1 - alpha²) on 2^20 points: %.3e (tol %.0e)", szego, kSzegoTol);
  verdict(4, lev <= kLevinsonTol && sk <= kSecondKindTol && szego <= kSzegoTol,
          "round trips: Levinson, second kind, Szegő identity");
}

// 5. Proof-step inequalities.
void criterion5() {
  std::mt19937_64 rng(kSeed + 5);
  std::vector<CoefficientSequence> corpus;
  for (double amp : {0.2, 0.5, 0.9})
    for (int trial = 0; trial < 40; ++trial) corpus.emplace_back(oracle::random_reals(rng, 40, amp));
  corpus.push_back(parse_alpha_preset("power:0.5,0.6,40"));
  corpus.push_back(parse_alpha_preset("prop2:40"));
  corpus.push_back(prop2_sequence(40).negated());

  long g_cases = 0, g_fail = 0;
  long lb_cases = 0, lb_fail = 0, per_r_fail = 0;
  double worst_lb = kInf;
  for (const auto& a : corpus) {
    for (long n = 2; n <= 40; ++n) {
      for (int j = 1; j <= 3 && 2 * j <= n; ++j) {
        if (n <= 20) {
          ++g_cases;
          if (g_quantity(a, n, j, false) + g_quantity(a, n, j, true) < 2.0 * j * std::log(4.0) - 1e-12) ++g_fail;
        }
        const double k = kernel_norm_mu(a, static_cast<std::size_t>(n), j).log_value;
        const double lb = log_kernel_lower_bound(a, static_cast<std::size_t>(n), j);
        ++lb_cases;
        worst_lb = std::min(worst_lb, k - lb);
        if (k < lb - 1e-12) ++lb_fail;
        if (k < log_kernel_lower_bound_per_r(a, static_cast<std::size_t>(n), j) - 1e-12) ++per_r_fail;
      }
    }
  }
  long leb_fail = 0;
  for (std::size_t n = 1; n <= 200; ++n)
    for (int j = 1; j <= static_cast<int>(n) && j <= 20; ++j)
      if (!kernel_norm_lebesgue(n, j).within_bound) ++leb_fail;
  long win_cases = 0, win_fail = 0;
  for (const auto& a : corpus) {
    for (const auto& row : dyadic_window_table(a.partial_sums())) {
      ++win_cases;
      if (std::exp(2.0 * row.oscillation) > 2.0 * row.product * (1 + 1e-12)) ++win_fail;
    }
  }
  ExampleParams p;
  for (const auto& row : dyadic_window_table(example_sequence(p).alpha.partial_sums())) {
    ++win_cases;
    if (std::exp(2.0 * row.oscillation) > 2.0 * row.product * (1 + 1e-12)) ++win_fail;
  }
  detail("G_h + G_(1/h) >= 2j log 4: %ld/%ld violations (n <= 20, j <= 3)", g_fail, g_cases);
  detail("kernel norm >= e^G kappa_j(n_j)^2 / 4^j Σ_{r>=n_j} h(r): %ld/%ld violations, min log margin %.4f",
         lb_fail, lb_cases, worst_lb);
  detail("  (per-r variant with the chain average at t_0 = r: %ld violations; informational)", per_r_fail);
  detail("Lebesgue norm <= (n/j) kappa_j(n)^2: %ld violations (n <= 200, j <= 20)", leb_fail);
  detail("exp(2 osc) <= 2 product: %ld/%ld window violations", win_fail, win_cases);
  verdict(5, g_fail == 0 && lb_fail == 0 && leb_fail == 0 && win_fail == 0, "proof-step inequalities");
}

// 6. Falling-factorial ratio boundedness.
void criterion6() {
  double sup = 0.0;
  long arg_n = 0;
  int arg_j = 0;
  bool finite = true;
  for (long n = 2; n <= 10000; ++n) {
    for (int j = 1; 2L * j <= n; ++j) {
      const double r = lemma5_ratio(n, j).log_ratio;
      if (!std::isfinite(r)) finite = false;
      if (r > sup) {
        sup = r;
        arg_n = n;
        arg_j = j;
      }
    }
  }
  detail("sup kappa_j(n)/kappa_j(n_j) = %.6f at n = %ld, j = %d (cap %.0f)", std::exp(sup), arg_n, arg_j, kLemma5Cap);
  verdict(6, finite && std::exp(sup) < kLemma5Cap, "falling-factorial ratio bounded for n <= 10^4");
}

// 7. Desk-scale Muckenhoupt behaviour.
void criterion7() {
  std::vector<double> sups;
  for (int p = 14; p <= 20; ++p)
    sups.push_back(diagnose(parse_alpha_preset("power:0.3,1.5," + std::to_string(1 << p))).muckenhoupt.global_sup);
  double drift = 0.0;
  for (std::size_t i = 1; i < sups.size(); ++i) drift = std::max(drift, std::abs(sups[i] / sups[i - 1] - 1.0));
  const double overall = std::abs(sups.back() / sups.front() - 1.0);
  const double baseline = sups.back();
  ExampleParams p;
  const auto ex = example_sequence(p);
  const auto r = example_verify(ex);
  const double last = r.rows.back().muckenhoupt;
  detail("Baxter power:0.3,1.5: dyadic sup %.6f at 2^14, %.6f at 2^20; max doubling change %.3e, overall %.3e",
         sups.front(), sups.back(), drift, overall);
  detail("example delta = 0.6: %zu intervals, last product %.4e = %.1fx baseline; increasing: %s", r.rows.size(), last,
         last / baseline, r.products_increasing ? "yes" : "no");
  detail("max |<s>_I| = %.3e; min oscillation / log l = %.6f", r.max_abs_mean, r.min_ratio_log);
  detail("oscillation / integral value in [%.4f, %.4f]", r.min_ratio_integral, r.max_ratio_integral);
  verdict(7,
          drift < kBaxterDrift && overall < kBaxterDrift && r.products_increasing && last > kExampleFactor * baseline &&
              r.max_abs_mean == 0.0 && r.min_ratio_log > 0.0,
          "Baxter presets stable, example products blow up");
}

// 8. Unbounded-h witness.
void criterion8() {
  const Prop2Report r = prop2_verify(100000);
  double w_at_1e4 = 0.0;
  for (const auto& d : r.decades)
    if (d.n == 10000) w_at_1e4 = d.w_at_one;
  detail("h strictly increasing: %s; h(1) = %.12f", r.h_increasing ? "yes" : "no", r.h1);
  detail("log h(n)/log n on [10^4, 10^5] in [%.4f, %.4f]; log-log slope %.4f", r.min_log_ratio, r.max_log_ratio,
         r.slope);
  detail("w_n(1) decreasing: %s; w_(10^4)(1) = %.6f, w_(10^5)(1) = %.6f (level %.0e)", r.w_decreasing ? "yes" : "no",
         w_at_1e4, r.decades.back().w_at_one, kProp2WitnessLevel);
  verdict(8,
          r.h_increasing && r.min_log_ratio >= kProp2RatioLo && r.max_log_ratio <= kProp2RatioHi && r.w_decreasing &&
              w_at_1e4 < kProp2WitnessLevel,
          "unbounded h witness: h increasing, h ~ n^(1/2), w_n(1) -> 0");
}

// 9. Performance and log-domain safety.
void criterion9() {
  std::vector<double> a(100001);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = 0.95 * std::sin(0.003 * static_cast<double>(k));
  const CoefficientSequence seq(a);
  auto t0 = std::chrono::steady_clock::now();
  const SignedLog v = lemma2_dp(seq, 100000, 10);
  const double dp_secs = seconds_since(t0);

  const auto big = parse_alpha_preset("power:0.9,0.6,1000000");
  t0 = std::chrono::steady_clock::now();
  const DiagnosticsReport d = diagnose(big);
  const double diag_secs = seconds_since(t0);

  bool finite = v.is_finite() && std::isfinite(d.muckenhoupt.log_global_sup) && std::isfinite(d.bmo.global_sup) &&
                std::isfinite(d.steklov_bound_c) && std::isfinite(d.consistency.log_h_window_sup);
  for (const auto& m : d.muckenhoupt.per_scale) finite = finite && std::isfinite(m.log_product);
  const KernelNorm k = kernel_norm_mu(seq, 100000, 5);
  finite = finite && std::isfinite(k.log_value);
  for (double x : seq.log_h()) finite = finite && std::isfinite(x);
  detail("lemma2_dp n = 1e5, j = 10: %.3f s (limit %.0f s), log10 value %.3f", dp_secs, kDpSeconds, v.log10_abs());
  detail("dyadic diagnostics N = 1e6: %.3f s (limit %.0f s), log10 sup %.3f", diag_secs, kDiagnosticsSeconds,
         d.muckenhoupt.log_global_sup / std::log(10.0));
  detail("kernel norm n = 1e5, j = 5: log10 %.3f; all log-domain outputs finite: %s", k.log10_value(),
         finite ? "yes" : "no");
  verdict(9, dp_secs < kDpSeconds && diag_secs < kDiagnosticsSeconds && finite, "performance and overflow safety");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                    criterion6, criterion7, criterion8, criterion9};
  for (const auto& c : criteria) c();
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
