#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "opuc/diagnostics.hpp"
#include "opuc/error.hpp"
#include "opuc/presets.hpp"
#include "oracles.hpp"

using namespace opuc;

namespace {

WindowOptions exact() {
  WindowOptions o;
  o.policy = WindowPolicy::exact;
  return o;
}

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("hand-computed windows") {
  std::vector<double> s{0.0, std::log(2.0)};
  CHECK(window_product(std::vector<double>{0.0, 2.0 * std::log(2.0)}, {0, 2}) == doctest::Approx(25.0 / 16.0));
  CHECK(muckenhoupt_characteristic(s, exact()).global_sup == doctest::Approx(25.0 / 16.0));
  std::vector<double> t{0.0, 1.0};
  CHECK(window_oscillation(t, {0, 2}) == doctest::Approx(0.5));
  CHECK(bmo_characteristic(t, exact()).global_sup == doctest::Approx(0.5));
  CHECK_THROWS_AS(window_product(t, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(window_oscillation(t, {0, 3}), InvalidArgument);
}

TEST_CASE("zero sequence") {
  auto a = parse_alpha_preset("zero:100");
  auto r = diagnose(a);
  CHECK(r.muckenhoupt.global_sup == 1.0);
  CHECK(r.bmo.global_sup == 0.0);
  CHECK(r.steklov_bound_c == 0.0);
  CHECK(r.szego_sum == 0.0);
  CHECK(r.two_s_plus_log_h_sup == 0.0);
  CHECK(r.consistency.h_window_sup == 1.0);
  for (const auto& p : r.consistency.prefix_averages) CHECK(p.product == doctest::Approx(1.0));
}

TEST_CASE("constant partial sums have no oscillation") {
  std::vector<double> s(37, 0.4);
  CHECK(bmo_characteristic(s, exact()).global_sup == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bmo_characteristic(s).global_sup == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("linear partial sums: oscillation grows linearly") {
  auto a = parse_alpha_preset("const:0.5,256");
  auto s = a.partial_sums();
  double prev = 0.0;
  for (std::size_t n : {16u, 32u, 64u, 128u, 256u}) {
    const double osc = window_oscillation(s, {0, n});
    CHECK(osc == doctest::Approx(0.5 * n / 4.0).epsilon(0.05));
    CHECK(osc > prev);
    prev = osc;
  }
}

TEST_CASE("dyadic windows layout") {
  auto w = dyadic_windows(8);
  // length 2 at offsets 0..6, length 4 at 0, 2, 4, length 8 at 0
  CHECK(w.size() == 7 + 3 + 1);
  CHECK(w.front() == Window{0, 2});
  CHECK(w.back() == Window{0, 8});
  WindowOptions o;
  o.scales = std::make_pair(2, 2);
  CHECK(dyadic_windows(8, o).size() == 3);
  o.scales = std::make_pair(0, 2);
  CHECK_THROWS_AS(dyadic_windows(8, o), InvalidArgument);
}

TEST_CASE("exact and dyadic policies agree with direct loops") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    CoefficientSequence a(oracle::random_reals(rng, 50 + 7 * trial, 0.4));
    auto s = vec(a.partial_sums());
    double sup = 1.0;
    double osc = 0.0;
    for (std::size_t l = 0; l < s.size(); ++l)
      for (std::size_t n = l + 1; n <= s.size(); ++n) {
        sup = std::max(sup, oracle::window_product(s, l, n));
        osc = std::max(osc, oracle::window_oscillation(s, l, n));
      }
    const auto m = muckenhoupt_characteristic(s, exact());
    const auto b = bmo_characteristic(s, exact());
    CHECK(m.global_sup == doctest::Approx(sup).epsilon(1e-12));
    CHECK(b.global_sup == doctest::Approx(osc).epsilon(1e-10));
    CHECK(oracle::window_product(s, m.argmax.begin, m.argmax.end) == doctest::Approx(sup).epsilon(1e-12));
    for (const auto& row : dyadic_window_table(s)) {
      CHECK(row.product == doctest::Approx(oracle::window_product(s, row.window.begin, row.window.end)).epsilon(1e-12));
      CHECK(row.oscillation ==
            doctest::Approx(oracle::window_oscillation(s, row.window.begin, row.window.end)).epsilon(1e-10));
    }
    const double dyadic = muckenhoupt_characteristic(s).global_sup;
    CHECK(dyadic <= m.global_sup * (1 + 1e-12));
    CHECK(m.global_sup <= 16.0 * dyadic);
  }
}

TEST_CASE("window properties: AM-GM, Jensen bridge, sign flip") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    CoefficientSequence a(oracle::random_reals(rng, 500, 0.8));
    auto s = vec(a.partial_sums());
    for (const auto& row : dyadic_window_table(s)) {
      CHECK(row.product >= 1.0 - 1e-12);
      CHECK(std::exp(2.0 * row.oscillation) <= 2.0 * row.product * (1 + 1e-12));
    }
    auto flipped = vec(a.negated().partial_sums());
    CHECK(muckenhoupt_characteristic(s).global_sup == muckenhoupt_characteristic(flipped).global_sup);
    CHECK(muckenhoupt_characteristic(s, exact()).global_sup ==
          doctest::Approx(muckenhoupt_characteristic(flipped, exact()).global_sup).epsilon(1e-14));
  }
}

TEST_CASE("large shifts do not overflow") {
  std::vector<double> s(1024);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = 300.0 + 0.01 * static_cast<double>(k % 7);
  auto m = muckenhoupt_characteristic(s);
  CHECK(std::isfinite(m.global_sup));
  CHECK(m.global_sup >= 1.0);
  CHECK(std::isfinite(muckenhoupt_characteristic(std::span<const double>(s).first(300), exact()).global_sup));
}

TEST_CASE("Steklov bound constant") {
  CHECK(steklov_bound_constant(parse_alpha_preset("zero:10")) == 0.0);
  // s_n ≈ -¼ log n for prop2, so s_n + ½ log n stays bounded below
  double prev = kInf;
  for (int p : {10, 13, 16}) {
    const double c = steklov_bound_constant(parse_alpha_preset("prop2:" + std::to_string(1 << p)));
    CHECK(c > -1.0);
    CHECK(c <= prev);
    prev = c;
  }
  CHECK_THROWS_AS(steklov_bound_constant(parse_alpha_preset("zero:1")), InvalidArgument);
}

TEST_CASE("consistency checks") {
  auto a = parse_alpha_preset("power:0.5,0.6,10000");
  auto c = consistency_checks(a);
  CHECK(c.two_s_plus_log_h_sup <= 3.0 * c.szego_sum);
  auto p = consistency_checks(parse_alpha_preset("prop2:4096"));
  double prev = 0.0;
  for (const auto& avg : p.prefix_averages) {
    CHECK(avg.product >= prev);
    prev = avg.product;
  }
  CHECK(p.prefix_averages.back().mean_h > 10.0);
}

TEST_CASE("Baxter-class presets keep the dyadic sup bounded") {
  double first = 0.0;
  for (int p : {10, 14, 18}) {
    const double sup = diagnose(parse_alpha_preset("power:0.3,1.5," + std::to_string(1 << p))).muckenhoupt.global_sup;
    if (first == 0.0) first = sup;
    CHECK(sup < 2.0 * first);
  }
}

TEST_CASE("exact policy size limit") {
  std::vector<double> s(kExactWindowLimit + 1, 0.0);
  CHECK_THROWS_AS(muckenhoupt_characteristic(s, exact()), InvalidArgument);
}
