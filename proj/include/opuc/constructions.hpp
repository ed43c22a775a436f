#pragma once

#include <cstddef>
#include <vector>

#include "opuc/measures.hpp"
#include "opuc/sequence.hpp"

namespace opuc {

/// Coefficients of the second-kind measure μ₋₁, by two routes.
struct SecondKind {
  CoefficientSequence negated;   // route (a): -alpha
  CoefficientSequence analytic;  // route (b): Levinson on Re(1/F)
  double max_deviation = 0.0;    // max_k |analytic_k - negated_k|
  double min_real_part = 0.0;    // min of Re F on the grid
  std::size_t grid_size = 0;
};

/// Route (b) builds F from the Bernstein–Szegő moments of alpha, takes the
/// moments of w₋₁ = Re(1/F) from the Taylor coefficients of 1/F and runs
/// Levinson on them. Re F is checked on a G-point grid through the exact
/// form F = P/Φ*_N; throws NumericalFailure when it is not positive.
SecondKind second_kind(const CoefficientSequence& alpha, std::size_t grid_size = 0);

/// Boundary density Re(1/F) of μ₋₁ on the G-point grid, with min Re F.
struct SecondKindDensity {
  std::vector<double> values;
  double min_real_part = 0.0;
};

SecondKindDensity second_kind_density(const Weight& w, std::size_t grid_size);

struct PairCheckOptions {
  double threshold = 1e-8;  // "bounded below" means inf > threshold
  double cap = 1e8;         // "bounded" means sup < cap
  std::size_t grid_size = 0;  // 0: default_grid_size()
};

struct PairCheck {
  double inf_w = 0.0;
  double sup_w = 0.0;
  double sup_hw = 0.0;
  double inf_w_minus = 0.0;
  bool condition_a = false;  // inf w and inf w₋₁ above threshold
  bool condition_b = false;  // inf w above threshold, sup w and sup |Hw| below cap
  bool agree = false;
};

PairCheck steklov_pair_check(const Weight& w, const PairCheckOptions& options = {});
PairCheck steklov_pair_check(const CoefficientSequence& alpha, const PairCheckOptions& options = {});

struct ExampleParams {
  double delta = 0.6;
  long l1 = 8;
  long gap = 1;
  std::size_t N = 100000;
  double scale = 1.0;
};

/// I_n = [l, r] (integer indices), kappa = r - l + 1, split into four quarters.
struct ExampleInterval {
  long l = 0;
  long r = 0;
  long kappa = 0;
};

struct ExampleSequence {
  ExampleParams params;
  std::vector<ExampleInterval> intervals;
  CoefficientSequence alpha;
};

/// Interval schedule l_1 = l1, kappa_n = max(4, 4 round(l^δ log l / 4)),
/// r_n = l_n + kappa_n - 1, l_{n+1} = r_n + 1 + gap; only whole intervals are kept.
std::vector<ExampleInterval> example_intervals(const ExampleParams& p);

/// alpha_k = scale / k^δ on the first quarter, its negated mirror on the second,
/// and the mirror of the first half about the centre of I_n on the second half.
ExampleSequence example_sequence(const ExampleParams& p);

struct ExampleRow {
  ExampleInterval interval;
  double mean_s = 0.0;
  double oscillation = 0.0;     // (1/|I_n|) Σ |s_k|
  double integral_value = 0.0;  // closed-form integral comparison value
  double ratio_integral = 0.0;  // oscillation / integral_value
  double ratio_log = 0.0;       // oscillation / log l
  double muckenhoupt = 1.0;     // window product on I_n
};

struct ExampleReport {
  std::vector<ExampleRow> rows;
  double szego_sum = 0.0;
  double max_s_over_log_k = 0.0;
  double min_ratio_log = 0.0;
  double min_ratio_integral = 0.0;
  double max_ratio_integral = 0.0;
  double max_abs_mean = 0.0;
  bool products_increasing = false;
};

ExampleReport example_verify(const ExampleSequence& ex);

/// alpha_k = -1/(4(k+2)), k < N.
CoefficientSequence prop2_sequence(std::size_t N);

struct Prop2Point {
  std::size_t n = 0;
  double h = 1.0;
  double w_at_one = 1.0;  // Π(1 - alpha²)/Φ*_n(1)² = 1/h(n)
  double mean_h = 1.0;    // (1/n) Σ_{k<n} h(k)
};

struct Prop2Report {
  std::size_t N = 0;
  double h1 = 0.0;
  bool h_increasing = false;
  bool h_at_least_one = false;
  double min_log_ratio = 0.0;  // min of log h(n) / log n over n in [N/10, N]
  double max_log_ratio = 0.0;
  double slope = 0.0;          // least-squares slope of log h against log n on [N/10, N]
  bool w_decreasing = false;
  bool mean_h_increasing = false;
  std::vector<Prop2Point> decades;  // n = 10, 100, ...
  std::vector<Prop2Point> dyadic;   // n = 2, 4, ...
};

Prop2Report prop2_verify(std::size_t N);

}  // namespace opuc
