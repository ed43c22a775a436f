#include "opuc/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "opuc/error.hpp"
#include "opuc/numeric.hpp"

namespace opuc {

namespace {

struct ScaleRange {
  int lo = 1;
  int hi = 0;  // empty when hi < lo
};

ScaleRange scale_range(std::size_t n, const WindowOptions& options) {
  ScaleRange r;
  r.hi = n >= 2 ? static_cast<int>(std::bit_width(n)) - 1 : 0;
  if (options.scales) {
    auto [p0, p1] = *options.scales;
    if (p0 < 1 || p1 < p0) {
      std::ostringstream msg;
      msg << "dyadic scales p0..p1 need 1 <= p0 <= p1 (got " << p0 << ".." << p1 << ")";
      throw InvalidArgument(msg.str());
    }
    r.lo = p0;
    r.hi = std::min(r.hi, p1);
  }
  return r;
}

// Log sums of e^{x} and e^{-x} over dyadic blocks of one level.
struct BlockSums {
  std::vector<double> plus;
  std::vector<double> minus;
};

BlockSums coarsen(const BlockSums& fine) {
  BlockSums out;
  const std::size_t m = fine.plus.size() / 2;
  out.plus.resize(m);
  out.minus.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.plus[i] = log_add_exp(fine.plus[2 * i], fine.plus[2 * i + 1]);
    out.minus[i] = log_add_exp(fine.minus[2 * i], fine.minus[2 * i + 1]);
  }
  return out;
}

// Per scale: log window products of e^{±x} on the dyadic windows, in dyadic_windows order.
template <class Visit>
void for_each_dyadic_product(std::span<const double> x, const WindowOptions& options, Visit&& visit) {
  const std::size_t n = x.size();
  const auto range = scale_range(n, options);
  if (range.hi < range.lo) return;
  BlockSums level;
  level.plus.assign(x.begin(), x.end());
  level.minus.resize(n);
  for (std::size_t k = 0; k < n; ++k) level.minus[k] = -x[k];
  for (int p = 1; p <= range.hi; ++p) {
    // level holds blocks of length 2^{p-1}
    if (p >= range.lo) {
      const std::size_t half = std::size_t{1} << (p - 1);
      const double log_len = std::log(static_cast<double>(2 * half));
      for (std::size_t i = 0; i + 1 < level.plus.size(); ++i) {
        const double lp = log_add_exp(level.plus[i], level.plus[i + 1]) - log_len;
        const double lm = log_add_exp(level.minus[i], level.minus[i + 1]) - log_len;
        visit(p, Window{i * half, i * half + 2 * half}, lp + lm);
      }
    }
    if (p < range.hi) level = coarsen(level);
  }
}

std::vector<double> doubled(std::span<const double> s) {
  std::vector<double> x(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) x[k] = 2.0 * s[k];
  return x;
}

std::vector<long double> prefix_sums(std::span<const double> s) {
  std::vector<long double> p(s.size() + 1, 0.0L);
  for (std::size_t k = 0; k < s.size(); ++k) p[k + 1] = p[k] + s[k];
  return p;
}

double oscillation_with_prefix(std::span<const double> s, const std::vector<long double>& prefix, Window w) {
  const double mean = static_cast<double>((prefix[w.end] - prefix[w.begin]) / static_cast<long double>(w.length()));
  double acc = 0.0;
  for (std::size_t k = w.begin; k < w.end; ++k) acc += std::abs(s[k] - mean);
  return acc / static_cast<double>(w.length());
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : count_(n + 1, 0), sum_(n + 1, 0.0L) {}
  void clear() {
    std::fill(count_.begin(), count_.end(), 0);
    std::fill(sum_.begin(), sum_.end(), 0.0L);
  }
  void add(std::size_t i, double v) {
    for (++i; i < count_.size(); i += i & (~i + 1)) {
      count_[i] += 1;
      sum_[i] += v;
    }
  }
  // Count and sum of the first i ranks.
  std::pair<long, long double> prefix(std::size_t i) const {
    long c = 0;
    long double s = 0.0L;
    for (; i > 0; i -= i & (~i + 1)) {
      c += count_[i];
      s += sum_[i];
    }
    return {c, s};
  }

 private:
  std::vector<long> count_;
  std::vector<long double> sum_;
};

void require_exact_size(std::size_t n) {
  if (n > kExactWindowLimit) {
    std::ostringstream msg;
    msg << "all-windows policy is limited to N <= " << kExactWindowLimit << " (got " << n << "); use dyadic windows";
    throw InvalidArgument(msg.str());
  }
}

MuckenhouptReport exact_muckenhoupt(std::span<const double> s) {
  require_exact_size(s.size());
  MuckenhouptReport out;
  const std::size_t n = s.size();
  for (std::size_t l = 0; l < n; ++l) {
    double mp = 2.0 * s[l];
    double mm = -2.0 * s[l];
    double sp = 1.0;
    double sm = 1.0;
    for (std::size_t e = l + 1; e <= n; ++e) {
      if (e > l + 1) {
        const double xp = 2.0 * s[e - 1];
        if (xp > mp) {
          sp = sp * std::exp(mp - xp) + 1.0;
          mp = xp;
        } else {
          sp += std::exp(xp - mp);
        }
        const double xm = -xp;
        if (xm > mm) {
          sm = sm * std::exp(mm - xm) + 1.0;
          mm = xm;
        } else {
          sm += std::exp(xm - mm);
        }
      }
      const double len = static_cast<double>(e - l);
      const double log_product = mp + mm + std::log(sp / len) + std::log(sm / len);
      if (log_product > out.log_global_sup) {
        out.log_global_sup = log_product;
        out.argmax = {l, e};
      }
    }
  }
  return out;
}

BmoReport exact_bmo(std::span<const double> s) {
  require_exact_size(s.size());
  BmoReport out;
  const std::size_t n = s.size();
  std::vector<double> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k)
    rank[k] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), s[k]) - sorted.begin());
  Fenwick tree(n);
  for (std::size_t l = 0; l < n; ++l) {
    tree.clear();
    long double total = 0.0L;
    for (std::size_t e = l + 1; e <= n; ++e) {
      tree.add(rank[e - 1], s[e - 1]);
      total += s[e - 1];
      const long double len = static_cast<long double>(e - l);
      const long double mean = total / len;
      const auto cut = static_cast<std::size_t>(
          std::upper_bound(sorted.begin(), sorted.end(), static_cast<double>(mean)) - sorted.begin());
      auto [cb, sb] = tree.prefix(cut);
      const long double dev = mean * cb - sb + (total - sb) - (len - cb) * mean;
      const double osc = static_cast<double>(dev / len);
      if (osc > out.global_sup) {
        out.global_sup = osc;
        out.argmax = {l, e};
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Window> dyadic_windows(std::size_t n, const WindowOptions& options) {
  std::vector<Window> out;
  const auto range = scale_range(n, options);
  for (int p = range.lo; p <= range.hi; ++p) {
    const std::size_t len = std::size_t{1} << p;
    const std::size_t step = len / 2;
    for (std::size_t o = 0; o + len <= n; o += step) out.push_back({o, o + len});
  }
  return out;
}

double window_product(std::span<const double> x, Window w) { return std::exp(log_window_product(x, w)); }

double log_window_product(std::span<const double> x, Window w) {
  if (w.begin >= w.end || w.end > x.size()) throw InvalidArgument("window must satisfy 0 <= l < n <= N");
  double mp = -kInf;
  double mm = -kInf;
  for (std::size_t k = w.begin; k < w.end; ++k) {
    mp = std::max(mp, x[k]);
    mm = std::max(mm, -x[k]);
  }
  double sp = 0.0;
  double sm = 0.0;
  for (std::size_t k = w.begin; k < w.end; ++k) {
    sp += std::exp(x[k] - mp);
    sm += std::exp(-x[k] - mm);
  }
  const double len = static_cast<double>(w.length());
  return mp + mm + std::log(sp / len) + std::log(sm / len);
}

double window_oscillation(std::span<const double> s, Window w) {
  if (w.begin >= w.end || w.end > s.size()) throw InvalidArgument("window must satisfy 0 <= l < n <= N");
  ExactSum sum;
  for (std::size_t k = w.begin; k < w.end; ++k) sum.add(s[k]);
  const double mean = sum.value() / static_cast<double>(w.length());
  double acc = 0.0;
  for (std::size_t k = w.begin; k < w.end; ++k) acc += std::abs(s[k] - mean);
  return acc / static_cast<double>(w.length());
}

std::vector<WindowStat> dyadic_window_table(std::span<const double> s, const WindowOptions& options) {
  std::vector<WindowStat> out;
  const auto prefix = prefix_sums(s);
  const auto x = doubled(s);
  for_each_dyadic_product(x, options, [&](int, Window w, double log_product) {
    out.push_back({w, std::exp(log_product), log_product, oscillation_with_prefix(s, prefix, w)});
  });
  return out;
}

MuckenhouptReport muckenhoupt_characteristic(std::span<const double> s, const WindowOptions& options) {
  MuckenhouptReport out;
  if (options.policy == WindowPolicy::exact) {
    out = exact_muckenhoupt(s);
  } else {
    const auto x = doubled(s);
    for_each_dyadic_product(x, options, [&](int p, Window w, double log_product) {
      const std::size_t len = std::size_t{1} << p;
      if (out.per_scale.empty() || out.per_scale.back().length != len)
        out.per_scale.push_back({len, 1.0, log_product});
      out.per_scale.back().log_product = std::max(out.per_scale.back().log_product, log_product);
      if (log_product > out.log_global_sup) {
        out.log_global_sup = log_product;
        out.argmax = w;
      }
    });
  }
  for (auto& m : out.per_scale) m.product = std::exp(m.log_product);
  out.global_sup = std::exp(out.log_global_sup);
  return out;
}

BmoReport bmo_characteristic(std::span<const double> s, const WindowOptions& options) {
  if (options.policy == WindowPolicy::exact) return exact_bmo(s);
  BmoReport out;
  const auto prefix = prefix_sums(s);
  for (const auto& w : dyadic_windows(s.size(), options)) {
    const double osc = oscillation_with_prefix(s, prefix, w);
    if (osc > out.global_sup) {
      out.global_sup = osc;
      out.argmax = w;
    }
  }
  return out;
}

double steklov_bound_constant(const CoefficientSequence& alpha) {
  if (alpha.size() < 2) throw InvalidArgument("steklov_bound_constant needs N >= 2");
  auto s = alpha.partial_sums();
  double best = kInf;
  for (std::size_t n = 1; n < s.size(); ++n) best = std::min(best, s[n] + 0.5 * std::log(static_cast<double>(n)));
  return best;
}

ConsistencyReport consistency_checks(const CoefficientSequence& alpha, const WindowOptions& options) {
  ConsistencyReport out;
  for (std::size_t n = 0; n < alpha.size(); ++n)
    out.two_s_plus_log_h_sup = std::max(out.two_s_plus_log_h_sup, std::abs(alpha.two_s_plus_log_h(n)));
  out.szego_sum = alpha.szego_sum();
  auto log_h = alpha.log_h();
  WindowOptions dyadic = options;
  dyadic.policy = WindowPolicy::dyadic;
  for_each_dyadic_product(log_h, dyadic, [&](int, Window w, double log_product) {
    if (log_product > out.log_h_window_sup) {
      out.log_h_window_sup = log_product;
      out.h_window_argmax = w;
    }
  });
  out.h_window_sup = std::exp(out.log_h_window_sup);
  double lp = -kInf;
  double lm = -kInf;
  std::size_t next = 1;
  for (std::size_t k = 0; k < log_h.size(); ++k) {
    lp = log_add_exp(lp, log_h[k]);
    lm = log_add_exp(lm, -log_h[k]);
    if (k + 1 == next) {
      const double log_n = std::log(static_cast<double>(next));
      HAverage a{next, std::exp(lp - log_n), std::exp(lm - log_n), std::exp(lp + lm - 2.0 * log_n)};
      out.prefix_averages.push_back(a);
      next *= 2;
    }
  }
  return out;
}

DiagnosticsReport diagnose(const CoefficientSequence& alpha, const WindowOptions& options) {
  DiagnosticsReport r;
  r.N = alpha.size();
  auto s = alpha.partial_sums();
  r.muckenhoupt = muckenhoupt_characteristic(s, options);
  r.bmo = bmo_characteristic(s, options);
  r.steklov_bound_c = alpha.size() >= 2 ? steklov_bound_constant(alpha) : 0.0;
  r.consistency = consistency_checks(alpha, options);
  r.szego_sum = r.consistency.szego_sum;
  r.two_s_plus_log_h_sup = r.consistency.two_s_plus_log_h_sup;
  return r;
}

}  // namespace opuc
