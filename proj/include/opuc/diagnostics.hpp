#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "opuc/sequence.hpp"

namespace opuc {

/// Index window [begin, end) into s_0..s_{N-1}; the paper's (ℓ, n).
struct Window {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - begin; }
  friend bool operator==(const Window&, const Window&) = default;
};

enum class WindowPolicy { dyadic, exact };

/// Largest N accepted by the all-windows policy.
inline constexpr std::size_t kExactWindowLimit = std::size_t{1} << 14;

struct WindowOptions {
  WindowPolicy policy = WindowPolicy::dyadic;
  /// Dyadic scales p0..p1 (window lengths 2^p); all scales p >= 1 when unset.
  std::optional<std::pair<int, int>> scales;
};

/// Windows of length 2^p at offsets that are multiples of 2^{p-1}, scale by scale.
std::vector<Window> dyadic_windows(std::size_t n, const WindowOptions& options = {});

/// (avg_{k∈W} e^{x_k}) (avg_{k∈W} e^{-x_k}), evaluated with a per-window shift.
double window_product(std::span<const double> x, Window w);
/// Logarithm of window_product.
double log_window_product(std::span<const double> x, Window w);
/// avg_{k∈W} |s_k - <s>_W|.
double window_oscillation(std::span<const double> s, Window w);

struct WindowStat {
  Window window;
  double product = 1.0;      // Muckenhoupt window product of 2s
  double log_product = 0.0;  // its logarithm, finite when the product overflows
  double oscillation = 0.0;  // mean absolute deviation of s
};

/// Product and oscillation on every dyadic window, in dyadic_windows order.
std::vector<WindowStat> dyadic_window_table(std::span<const double> s, const WindowOptions& options = {});

struct ScaleMax {
  std::size_t length = 0;
  double product = 1.0;
  double log_product = 0.0;
};

/// Linear values are exp of the log values and may be +inf for sequences
/// whose partial sums exceed the double range on a window.
struct MuckenhouptReport {
  double global_sup = 1.0;
  double log_global_sup = 0.0;
  Window argmax;
  std::vector<ScaleMax> per_scale;  // dyadic policy only
};

struct BmoReport {
  double global_sup = 0.0;
  Window argmax;
};

/// sup over windows of (avg e^{2s})(avg e^{-2s}).
MuckenhouptReport muckenhoupt_characteristic(std::span<const double> s, const WindowOptions& options = {});
/// sup over windows of avg |s - <s>|.
BmoReport bmo_characteristic(std::span<const double> s, const WindowOptions& options = {});

/// inf_{1 <= n <= N-1} (s_n + ½ log n). Requires N >= 2.
double steklov_bound_constant(const CoefficientSequence& alpha);

struct HAverage {
  std::size_t n = 0;
  double mean_h = 1.0;      // (1/n) Σ_{k<n} h(k)
  double mean_inv_h = 1.0;  // (1/n) Σ_{k<n} 1/h(k)
  double product = 1.0;
};

struct ConsistencyReport {
  double two_s_plus_log_h_sup = 0.0;  // sup_n |2 s_n + log h(n+1)|
  double szego_sum = 0.0;
  double h_window_sup = 1.0;          // dyadic sup of (avg h)(avg 1/h)
  double log_h_window_sup = 0.0;
  Window h_window_argmax;
  std::vector<HAverage> prefix_averages;  // ℓ = 0, n = 2^p
};

ConsistencyReport consistency_checks(const CoefficientSequence& alpha, const WindowOptions& options = {});

struct DiagnosticsReport {
  std::size_t N = 0;
  MuckenhouptReport muckenhoupt;
  BmoReport bmo;
  double steklov_bound_c = 0.0;
  double szego_sum = 0.0;
  double two_s_plus_log_h_sup = 0.0;
  ConsistencyReport consistency;
};

DiagnosticsReport diagnose(const CoefficientSequence& alpha, const WindowOptions& options = {});

}  // namespace opuc
