#include "opuc/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opuc/diagnostics.hpp"
#include "opuc/error.hpp"
#include "opuc/opuc.hpp"

namespace opuc {

namespace {

std::size_t resolve_grid(std::size_t g) { return g == 0 ? default_grid_size() : g; }

// For a Bernstein–Szegő weight of degree N, P = F·Φ*_N is a polynomial of
// degree N, so F = P/Φ*_N is known exactly from the first N moments.
struct RationalF {
  std::vector<Complex> p;
  std::vector<Complex> q;
};

RationalF bs_caratheodory(const CoefficientSequence& alpha) {
  const std::size_t n = alpha.size();
  const CaratheodoryFunction f = caratheodory(bernstein_szego_moments(alpha, static_cast<int>(n)));
  const auto taylor = f.taylor();
  const auto pair = szego_recurrence(alpha.alpha(), n);
  RationalF out;
  out.q.assign(pair.phistar.begin(), pair.phistar.end());
  out.p.assign(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t i = 0; i <= k; ++i) out.p[k] += taylor[i] * out.q[k - i];
  return out;
}

std::vector<Complex> bs_caratheodory_on_circle(const CoefficientSequence& alpha, std::size_t g) {
  const RationalF f = bs_caratheodory(alpha);
  const auto pv = evaluate_on_grid(0, f.p, g);
  const auto qv = evaluate_on_grid(0, f.q, g);
  std::vector<Complex> out(g);
  for (std::size_t i = 0; i < g; ++i) out[i] = pv[i] / qv[i];
  return out;
}

// Taylor coefficients of 1/F up to degree n. 1/F is the Carathéodory function
// of μ₋₁, whose boundary real part is w₋₁ = Re(1/F); halving the coefficients
// past the constant term gives its moments without sampling the boundary.
MomentTable inverse_caratheodory_moments(const MomentTable& m, int n) {
  const CaratheodoryFunction cf = caratheodory(m);
  const auto f = cf.taylor();
  const auto len = static_cast<std::size_t>(n + 1);
  std::vector<Complex> g(len);
  g[0] = 1.0 / f[0];
  for (std::size_t k = 1; k < len; ++k) {
    Complex acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) acc += f[i] * g[k - i];
    g[k] = -acc / f[0];
  }
  MomentTable out;
  out.bandwidth = n;
  out.values.resize(2 * len - 1);
  const std::size_t mid = len - 1;
  out.values[mid] = 1.0;
  for (std::size_t k = 1; k < len; ++k) {
    const Complex c = g[k] / (2.0 * g[0]);
    out.values[mid + k] = c;
    out.values[mid - k] = std::conj(c);
  }
  return out;
}

}  // namespace

SecondKindDensity second_kind_density(const Weight& w, std::size_t grid_size) {
  if (!is_power_of_two(grid_size) || grid_size < 16)
    throw InvalidArgument("second-kind density needs a power-of-two grid of at least 16 points");
  std::vector<Complex> values;
  if (w.kind() == Weight::Kind::bernstein_szego && !w.source().empty() && 4 * w.source().size() <= grid_size)
    values = bs_caratheodory_on_circle(w.source(), grid_size);
  else
    values = caratheodory(moments(w, static_cast<int>(grid_size / 4))).values_on_circle(1.0, grid_size);
  SecondKindDensity out;
  out.values.resize(grid_size);
  out.min_real_part = kInf;
  for (std::size_t i = 0; i < grid_size; ++i) {
    out.min_real_part = std::min(out.min_real_part, values[i].real());
    out.values[i] = (1.0 / values[i]).real();
  }
  return out;
}

SecondKind second_kind(const CoefficientSequence& alpha, std::size_t grid_size) {
  const std::size_t g = resolve_grid(grid_size);
  SecondKind out;
  out.negated = alpha.negated();
  out.grid_size = g;
  if (alpha.empty()) {
    out.analytic = alpha;
    out.min_real_part = 1.0;
    return out;
  }
  if (4 * alpha.size() > g) {
    std::ostringstream msg;
    msg << "second_kind: grid of " << g << " points is too coarse for N = " << alpha.size();
    throw InvalidArgument(msg.str());
  }
  out.min_real_part = kInf;
  for (const Complex& v : bs_caratheodory_on_circle(alpha, g)) out.min_real_part = std::min(out.min_real_part, v.real());
  if (!(out.min_real_part > 0.0)) {
    std::ostringstream msg;
    msg << "second_kind: Re F reaches " << out.min_real_part << " on the grid; 1/F is not defined";
    throw NumericalFailure(msg.str());
  }
  const int n = static_cast<int>(alpha.size());
  const MomentTable m = inverse_caratheodory_moments(bernstein_szego_moments(alpha, n), n);
  out.analytic = levinson_real(m, alpha.size(), 1e-9);
  for (std::size_t k = 0; k < alpha.size(); ++k)
    out.max_deviation = std::max(out.max_deviation, std::abs(out.analytic[k] - out.negated[k]));
  return out;
}

PairCheck steklov_pair_check(const Weight& w, const PairCheckOptions& options) {
  const std::size_t g = w.kind() == Weight::Kind::grid ? w.samples().size() : resolve_grid(options.grid_size);
  PairCheck out;
  const auto values = w.grid_values(g);
  out.inf_w = *std::min_element(values.begin(), values.end());
  out.sup_w = *std::max_element(values.begin(), values.end());
  out.sup_hw = hilbert_transform(w, static_cast<int>(g / 4), g).sup_norm;
  const auto minus = second_kind_density(w, g);
  out.inf_w_minus = kInf;
  for (double v : minus.values)
    if (std::isfinite(v)) out.inf_w_minus = std::min(out.inf_w_minus, v);
  out.condition_b = out.inf_w > options.threshold && out.sup_w < options.cap && out.sup_hw < options.cap;
  out.condition_a = out.inf_w > options.threshold && out.inf_w_minus > options.threshold;
  out.agree = out.condition_a == out.condition_b;
  return out;
}

PairCheck steklov_pair_check(const CoefficientSequence& alpha, const PairCheckOptions& options) {
  return steklov_pair_check(Weight::bernstein_szego(alpha), options);
}

std::vector<ExampleInterval> example_intervals(const ExampleParams& p) {
  if (!(p.delta > 0.5)) throw InvalidArgument("example needs delta > 1/2");
  if (!(p.scale > 0.0 && p.scale <= 1.0)) throw InvalidArgument("example needs scale in (0, 1]");
  if (p.l1 < 2) throw InvalidArgument("example needs l1 >= 2");
  if (p.gap < 1) throw InvalidArgument("example needs gap >= 1");
  std::vector<ExampleInterval> out;
  long l = p.l1;
  while (true) {
    const double target = std::pow(static_cast<double>(l), p.delta) * std::log(static_cast<double>(l));
    const long kappa = std::max(4L, 4L * std::lround(target / 4.0));
    const double ratio = static_cast<double>(kappa) / target;
    if (ratio < 0.5 || ratio > 2.0) {
      std::ostringstream msg;
      msg << "interval at l = " << l << " has length " << kappa << ", not comparable to l^delta log l = " << target
          << "; raise l1";
      throw InvalidArgument(msg.str());
    }
    const long r = l + kappa - 1;
    if (r >= static_cast<long>(p.N)) break;
    out.push_back({l, r, kappa});
    l = r + 1 + p.gap;
  }
  if (out.empty()) {
    std::ostringstream msg;
    msg << "N = " << p.N << " is too small for the first interval starting at l1 = " << p.l1;
    throw InvalidArgument(msg.str());
  }
  return out;
}

ExampleSequence example_sequence(const ExampleParams& p) {
  ExampleSequence ex;
  ex.params = p;
  ex.intervals = example_intervals(p);
  std::vector<double> a(p.N, 0.0);
  for (const auto& iv : ex.intervals) {
    const long q = iv.kappa / 4;
    for (long k = iv.l; k < iv.l + q; ++k) {
      const double v = p.scale / std::pow(static_cast<double>(k), p.delta);
      const long odd = 2 * (iv.l + q) - 1 - k;
      a[static_cast<std::size_t>(k)] = v;
      a[static_cast<std::size_t>(odd)] = -v;
      a[static_cast<std::size_t>(iv.l + iv.r - k)] = v;
      a[static_cast<std::size_t>(iv.l + iv.r - odd)] = -v;
    }
  }
  ex.alpha = CoefficientSequence(std::move(a));
  return ex;
}

namespace {

double integral_value(double l, double r, double delta) {
  if (std::abs(delta - 1.0) < 1e-12) return (r * std::log(r) - r - l * std::log(l) + l) / (r - l) - std::log(l);
  return ((std::pow(r, 2.0 - delta) - std::pow(l, 2.0 - delta)) / ((r - l) * (2.0 - delta)) -
          std::pow(l, 1.0 - delta)) /
         (1.0 - delta);
}

}  // namespace

ExampleReport example_verify(const ExampleSequence& ex) {
  ExampleReport out;
  auto s = ex.alpha.partial_sums();
  std::vector<double> two_s(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) two_s[k] = 2.0 * s[k];
  out.min_ratio_log = kInf;
  out.min_ratio_integral = kInf;
  out.max_ratio_integral = 0.0;
  out.products_increasing = true;
  for (const auto& iv : ex.intervals) {
    ExampleRow row;
    row.interval = iv;
    ExactSum mean;
    double abs_sum = 0.0;
    for (long k = iv.l; k <= iv.r; ++k) {
      mean.add(s[static_cast<std::size_t>(k)]);
      abs_sum += std::abs(s[static_cast<std::size_t>(k)]);
    }
    const double len = static_cast<double>(iv.kappa);
    row.mean_s = mean.value() / len;
    row.oscillation = abs_sum / len;
    row.integral_value =
        ex.params.scale * integral_value(static_cast<double>(iv.l), static_cast<double>(iv.r), ex.params.delta);
    row.ratio_integral = row.oscillation / row.integral_value;
    row.ratio_log = row.oscillation / std::log(static_cast<double>(iv.l));
    row.muckenhoupt = window_product(two_s, {static_cast<std::size_t>(iv.l), static_cast<std::size_t>(iv.r) + 1});
    if (!out.rows.empty() && !(row.muckenhoupt > out.rows.back().muckenhoupt)) out.products_increasing = false;
    out.min_ratio_log = std::min(out.min_ratio_log, row.ratio_log);
    out.min_ratio_integral = std::min(out.min_ratio_integral, row.ratio_integral);
    out.max_ratio_integral = std::max(out.max_ratio_integral, row.ratio_integral);
    out.max_abs_mean = std::max(out.max_abs_mean, std::abs(row.mean_s));
    out.rows.push_back(row);
  }
  out.szego_sum = ex.alpha.szego_sum();
  for (std::size_t k = 2; k < s.size(); ++k)
    out.max_s_over_log_k = std::max(out.max_s_over_log_k, std::abs(s[k]) / std::log(static_cast<double>(k)));
  return out;
}

CoefficientSequence prop2_sequence(std::size_t N) {
  std::vector<double> a(N);
  for (std::size_t k = 0; k < N; ++k) a[k] = -1.0 / (4.0 * (static_cast<double>(k) + 2.0));
  return CoefficientSequence(std::move(a));
}

Prop2Report prop2_verify(std::size_t N) {
  if (N < 10) throw InvalidArgument("prop2 needs N >= 10");
  const auto alpha = prop2_sequence(N);
  auto log_h = alpha.log_h();
  Prop2Report out;
  out.N = N;
  out.h1 = std::exp(log_h[1]);
  out.h_increasing = true;
  out.h_at_least_one = true;
  out.w_decreasing = true;
  for (std::size_t n = 0; n < N; ++n) {
    if (!(log_h[n + 1] > log_h[n])) {
      out.h_increasing = false;
      out.w_decreasing = false;
    }
    if (log_h[n + 1] < 0.0) out.h_at_least_one = false;
  }
  const std::size_t lo = std::max<std::size_t>(2, N / 10);
  out.min_log_ratio = kInf;
  out.max_log_ratio = -kInf;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double count = 0;
  for (std::size_t n = lo; n <= N; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = log_h[n];
    out.min_log_ratio = std::min(out.min_log_ratio, y / x);
    out.max_log_ratio = std::max(out.max_log_ratio, y / x);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    count += 1;
  }
  out.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  double log_sum = -kInf;
  std::size_t next_dyadic = 2;
  std::size_t next_decade = 10;
  out.mean_h_increasing = true;
  for (std::size_t n = 1; n <= N; ++n) {
    log_sum = log_add_exp(log_sum, log_h[n - 1]);
    const bool dyadic = n == next_dyadic;
    const bool decade = n == next_decade;
    if (!dyadic && !decade) continue;
    Prop2Point pt{n, std::exp(log_h[n]), std::exp(-log_h[n]),
                  std::exp(log_sum - std::log(static_cast<double>(n)))};
    if (dyadic) {
      if (!out.dyadic.empty() && !(pt.mean_h > out.dyadic.back().mean_h)) out.mean_h_increasing = false;
      out.dyadic.push_back(pt);
      next_dyadic *= 2;
    }
    if (decade) {
      out.decades.push_back(pt);
      next_decade *= 10;
    }
  }
  return out;
}

}  // namespace opuc
