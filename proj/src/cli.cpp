#include "opuc/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "opuc/constructions.hpp"
#include "opuc/derivatives.hpp"
#include "opuc/diagnostics.hpp"
#include "opuc/error.hpp"
#include "opuc/kernels.hpp"
#include "opuc/measures.hpp"
#include "opuc/opuc.hpp"
#include "opuc/polynomial.hpp"
#include "opuc/presets.hpp"

namespace opuc {

namespace {

using json = nlohmann::json;

json complex_array(std::span<const Complex> v) {
  json re = json::array();
  json im = json::array();
  for (const Complex& c : v) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"re", re}, {"im", im}};
}

json window_json(const Window& w) { return {{"l", w.begin}, {"n", w.end}}; }

std::string require_preset(const std::string& preset, const char* flag, const std::string& sub) {
  if (preset.empty()) throw InvalidArgument(sub + " needs " + flag);
  return preset;
}

long require_nonneg(const std::optional<long>& v, const char* flag, const std::string& sub) {
  if (!v) throw InvalidArgument(sub + " needs " + flag);
  if (*v < 0) throw InvalidArgument(std::string(flag) + " must be non-negative");
  return *v;
}

int require_order(const std::optional<int>& v, const std::string& sub) {
  if (!v) throw InvalidArgument(sub + " needs --j");
  if (*v < 0) throw InvalidArgument("--j must be non-negative");
  return *v;
}

std::vector<Rational> to_rational(const CoefficientSequence& a) {
  std::vector<Rational> out;
  out.reserve(a.size());
  for (double x : a.alpha()) out.emplace_back(x);
  return out;
}

std::vector<std::string> rational_strings(std::span<const Rational> v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json signed_log_json(const SignedLog& v) {
  return {{"value_sign", v.sign}, {"value_log10", v.sign == 0 ? json(nullptr) : json(v.log10_abs())}};
}

WindowOptions window_options(const RunConfig& c) {
  WindowOptions w;
  w.policy = c.exact_windows ? WindowPolicy::exact : WindowPolicy::dyadic;
  w.scales = c.scales;
  return w;
}

json diagnostics_json(const DiagnosticsReport& r) {
  json per_scale = json::array();
  const double ln10 = std::log(10.0);
  for (const auto& s : r.muckenhoupt.per_scale)
    per_scale.push_back({{"length", s.length}, {"max_product", s.product}, {"max_product_log10", s.log_product / ln10}});
  json prefix = json::array();
  for (const auto& a : r.consistency.prefix_averages)
    prefix.push_back({{"n", a.n}, {"mean_h", a.mean_h}, {"mean_inv_h", a.mean_inv_h}, {"product", a.product}});
  return {{"N", r.N},
          {"muckenhoupt",
           {{"global_sup", r.muckenhoupt.global_sup},
            {"global_sup_log10", r.muckenhoupt.log_global_sup / ln10},
            {"argmax_window", window_json(r.muckenhoupt.argmax)},
            {"per_scale", per_scale}}},
          {"bmo", {{"global_sup", r.bmo.global_sup}, {"argmax_window", window_json(r.bmo.argmax)}}},
          {"steklov_bound_c", r.steklov_bound_c},
          {"szego_sum", r.szego_sum},
          {"two_s_plus_log_h_sup", r.two_s_plus_log_h_sup},
          {"consistency",
           {{"h_window_sup", r.consistency.h_window_sup},
            {"h_window_sup_log10", r.consistency.log_h_window_sup / ln10},
            {"h_window_argmax", window_json(r.consistency.h_window_argmax)},
            {"prefix_averages", prefix}}}};
}

json pair_json(const PairCheck& p) {
  return {{"inf_w", p.inf_w},           {"sup_w", p.sup_w},
          {"sup_hw", p.sup_hw},         {"inf_w_minus", p.inf_w_minus},
          {"condition_a", p.condition_a}, {"condition_b", p.condition_b},
          {"agree", p.agree}};
}

json cmd_moments(const RunConfig& c) {
  const Weight w = parse_weight_preset(require_preset(c.weight, "--weight", c.subcommand));
  const int m = c.bandwidth.value_or(8);
  if (m < 0) throw InvalidArgument("--M must be non-negative");
  const MomentTable t = moments(w, m);
  return {{"bandwidth", m}, {"moments", complex_array(t.values)}, {"scale", w.scale()}};
}

json cmd_levinson(const RunConfig& c) {
  const Weight w = parse_weight_preset(require_preset(c.weight, "--weight", c.subcommand));
  const long count = c.N.value_or(10);
  if (count < 0) throw InvalidArgument("--N must be non-negative");
  const MomentTable t = moments(w, static_cast<int>(count));
  const auto a = levinson(t, static_cast<std::size_t>(count));
  return {{"N", count}, {"alphas", complex_array(a)}};
}

json cmd_recurrence(const RunConfig& c) {
  const auto alpha = parse_alpha_preset(require_preset(c.alphas, "--alphas", c.subcommand));
  const auto n = static_cast<std::size_t>(c.n ? require_nonneg(c.n, "--n", c.subcommand) : static_cast<long>(alpha.size()));
  if (c.exact) {
    if (n > kExactModeMaxDegree * 8) throw InvalidArgument("exact recurrence is limited to n <= 96");
    const auto q = to_rational(alpha);
    const auto p = szego_recurrence<Rational>(std::span<const Rational>(q), n);
    return {{"n", n}, {"exact", true}, {"phi", rational_strings(p.phi)}, {"phistar", rational_strings(p.phistar)}};
  }
  const auto p = szego_recurrence<double>(alpha.alpha(), n);
  return {{"n", n}, {"exact", false}, {"phi", p.phi}, {"phistar", p.phistar}};
}

json cmd_derivatives(const RunConfig& c) {
  const auto alpha = parse_alpha_preset(require_preset(c.alphas, "--alphas", c.subcommand));
  const auto n = static_cast<std::size_t>(require_nonneg(c.n, "--n", c.subcommand));
  const int j = require_order(c.j, c.subcommand);
  const std::string& m = c.method;
  if (m != "lemma1" && m != "naive" && m != "dp" && m != "poly")
    throw InvalidArgument("--method must be one of lemma1, naive, dp, poly");
  if (alpha.size() < n + 1) {
    std::ostringstream msg;
    msg << "derivatives at n = " << n << " need n+1 = " << n + 1 << " coefficients, preset has " << alpha.size();
    throw InvalidArgument(msg.str());
  }
  if (static_cast<std::size_t>(j) > n + 1) throw InvalidArgument("--j must not exceed n+1");
  json out{{"method", m}, {"n", n}, {"j", j}, {"exact", c.exact}};
  if (c.exact) {
    if (n > kExactModeMaxDegree) throw InvalidArgument("exact mode is limited to n <= 12");
    const auto q = to_rational(alpha);
    std::span<const Rational> qs(q);
    Rational v;
    if (m == "lemma1") v = lemma1_derivative<Rational>(qs, n, j).first;
    else if (m == "naive") v = j == 0 ? polynomial_derivative<Rational>(qs, n, 0) : lemma2_naive<Rational>(qs, n, j);
    else if (m == "dp") v = j == 0 ? polynomial_derivative<Rational>(qs, n, 0) : lemma2_dp(qs, n, j);
    else v = polynomial_derivative<Rational>(qs, n, j);
    out.update(signed_log_json(SignedLog::from_value(v.get_d())));
    out["value_exact"] = v.get_str();
    out["value"] = v.get_d();
    return out;
  }
  SignedLog v;
  if (m == "lemma1") v = SignedLog::from_value(lemma1_derivative<double>(alpha.alpha(), n, j).first);
  else if (m == "naive") v = j == 0 ? phi_at_one(alpha, n + 1) : SignedLog::from_value(lemma2_naive<double>(alpha.alpha(), n, j));
  else if (m == "dp") v = j == 0 ? phi_at_one(alpha, n + 1) : lemma2_dp(alpha, n, j);
  else v = SignedLog::from_value(polynomial_derivative<double>(alpha.alpha(), n, j));
  out.update(signed_log_json(v));
  out["value"] = v.value();
  return out;
}

json cmd_kernels(const RunConfig& c) {
  const auto alpha = parse_alpha_preset(require_preset(c.alphas, "--alphas", c.subcommand));
  const auto n = static_cast<std::size_t>(require_nonneg(c.n, "--n", c.subcommand));
  const int j = require_order(c.j, c.subcommand);
  const KernelNorm k = kernel_norm_mu(alpha, n, j);
  const LebesgueNorm leb = kernel_norm_lebesgue(n, j);
  json out{{"n", n},
           {"j", j},
           {"norm_log10", k.log10_value()},
           {"lebesgue_norm_log10", leb.norm.log10_value()},
           {"lebesgue_within_bound", leb.within_bound},
           {"lemma7_ratio_log10", lemma7_ratio(alpha, alpha.negated(), n, j) / std::log(10.0)}};
  if (c.check_toeplitz) {
    if (n > 200) throw InvalidArgument("--check-toeplitz is limited to n <= 200");
    const auto prefix = alpha.prefix(n);
    const Weight w = Weight::bernstein_szego(prefix);
    const MomentTable m = bernstein_szego_moments(prefix, static_cast<int>(n));
    const auto a = cd_kernel(alpha, 1.0, n);
    const auto b = toeplitz_kernel(m, 1.0, n);
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      scale = std::max(scale, std::abs(a[i]));
      diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    const auto grid = w.grid_values(default_grid_size());
    const double inf_w = *std::min_element(grid.begin(), grid.end());
    const double tol = c.tolerance.value_or(1e-8);
    const double min_eig = toeplitz_min_eigenvalue(m, n);
    out["toeplitz"] = {{"max_relative_difference", diff / scale},
                       {"min_eigenvalue", min_eig},
                       {"inf_w", inf_w},
                       {"tolerance", tol},
                       {"pass", diff / scale <= tol && min_eig >= inf_w - 1e-6}};
  }
  return out;
}

json cmd_diagnostics(const RunConfig& c) {
  const auto alpha = parse_alpha_preset(require_preset(c.alphas, "--alphas", c.subcommand));
  const auto opts = window_options(c);
  json out = diagnostics_json(diagnose(alpha, opts));
  out["policy"] = c.exact_windows ? "exact" : "dyadic";
  if (!c.csv_path.empty()) {
    std::ofstream csv(c.csv_path);
    if (!csv) throw InvalidArgument("cannot write '" + c.csv_path + "'");
    WindowOptions dyadic = opts;
    dyadic.policy = WindowPolicy::dyadic;
    csv << "l,n,product,oscillation\n";
    csv.precision(17);
    for (const auto& row : dyadic_window_table(alpha.partial_sums(), dyadic))
      csv << row.window.begin << ',' << row.window.end << ',' << row.product << ',' << row.oscillation << '\n';
  }
  return out;
}

json cmd_second_kind(const RunConfig& c) {
  const auto alpha = parse_alpha_preset(require_preset(c.alphas, "--alphas", c.subcommand));
  const auto negated = alpha.negated();
  json out{{"N", alpha.size()}, {"negated", std::vector<double>(negated.alpha().begin(), negated.alpha().end())}};
  if (c.verify) {
    const SecondKind r = second_kind(alpha);
    const double tol = c.tolerance.value_or(1e-7);
    out["analytic"] = std::vector<double>(r.analytic.alpha().begin(), r.analytic.alpha().end());
    out["max_deviation"] = r.max_deviation;
    out["min_real_part_F"] = r.min_real_part;
    out["grid_size"] = r.grid_size;
    out["tolerance"] = tol;
    out["pass"] = r.max_deviation <= tol;
  }
  return out;
}

json cmd_example(const RunConfig& c) {
  ExampleParams p;
  p.delta = c.delta;
  p.l1 = c.l1;
  p.gap = c.gap;
  p.scale = c.scale;
  p.N = static_cast<std::size_t>(c.N ? require_nonneg(c.N, "--N", c.subcommand) : 100000);
  const ExampleSequence ex = example_sequence(p);
  const ExampleReport r = example_verify(ex);
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"l", row.interval.l},
                    {"r", row.interval.r},
                    {"kappa", row.interval.kappa},
                    {"mean_s", row.mean_s},
                    {"oscillation", row.oscillation},
                    {"integral_value", row.integral_value},
                    {"ratio_integral", row.ratio_integral},
                    {"ratio_log", row.ratio_log},
                    {"muckenhoupt", row.muckenhoupt}});
  if (!c.csv_path.empty()) {
    std::ofstream csv(c.csv_path);
    if (!csv) throw InvalidArgument("cannot write '" + c.csv_path + "'");
    csv.precision(17);
    for (double a : ex.alpha.alpha()) csv << a << '\n';
  }
  return {{"params", {{"delta", p.delta}, {"l1", p.l1}, {"gap", p.gap}, {"scale", p.scale}, {"N", p.N}}},
          {"intervals", rows},
          {"szego_sum", r.szego_sum},
          {"max_s_over_log_k", r.max_s_over_log_k},
          {"min_ratio_log", r.min_ratio_log},
          {"min_ratio_integral", r.min_ratio_integral},
          {"max_ratio_integral", r.max_ratio_integral},
          {"max_abs_mean", r.max_abs_mean},
          {"products_increasing", r.products_increasing}};
}

json prop2_point_json(const Prop2Point& p) {
  return {{"n", p.n}, {"h", p.h}, {"w_at_one", p.w_at_one}, {"mean_h", p.mean_h}};
}

json cmd_prop2(const RunConfig& c) {
  const auto N = static_cast<std::size_t>(c.N ? require_nonneg(c.N, "--N", c.subcommand) : 100000);
  const Prop2Report r = prop2_verify(N);
  json decades = json::array();
  json dyadic = json::array();
  for (const auto& p : r.decades) decades.push_back(prop2_point_json(p));
  for (const auto& p : r.dyadic) dyadic.push_back(prop2_point_json(p));
  return {{"N", r.N},
          {"h1", r.h1},
          {"h_increasing", r.h_increasing},
          {"h_at_least_one", r.h_at_least_one},
          {"log_ratio_last_decade", {{"min", r.min_log_ratio}, {"max", r.max_log_ratio}}},
          {"slope_last_decade", r.slope},
          {"w_decreasing", r.w_decreasing},
          {"mean_h_increasing", r.mean_h_increasing},
          {"decades", decades},
          {"dyadic", dyadic}};
}

json cmd_theorem_check(const RunConfig& c) {
  const auto alpha = parse_alpha_preset(require_preset(c.alphas, "--alphas", c.subcommand));
  if (alpha.size() < 2) throw InvalidArgument("theorem-check needs N >= 2");
  const auto opts = window_options(c);
  const auto minus = alpha.negated();
  const DiagnosticsReport dm = diagnose(alpha, opts);
  const DiagnosticsReport dn = diagnose(minus, opts);
  const PairCheck pair = steklov_pair_check(alpha);
  json ratios = json::array();
  for (std::size_t n = 1; n <= alpha.size(); n *= 2) {
    for (int j = 0; j <= 3 && static_cast<std::size_t>(j) <= n; ++j)
      ratios.push_back({{"n", n}, {"j", j}, {"log10_ratio", lemma7_ratio(alpha, minus, n, j) / std::log(10.0)}});
  }
  // Reproducing property on a seeded random polynomial, exact moments.
  const std::size_t deg = std::min<std::size_t>(alpha.size(), 12);
  const auto prefix = alpha.prefix(deg);
  const MomentTable m = bernstein_szego_moments(prefix, static_cast<int>(deg));
  const auto k = cd_kernel(alpha, 1.0, deg);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> p(deg + 1);
  for (auto& x : p) x = Complex(u(rng), u(rng));
  const Complex lhs = inner_product(m, p, k);
  const Complex rhs = evaluate<Complex, Complex>(std::span<const Complex>(p), Complex(1.0));
  const double repro = std::abs(lhs - rhs);
  const double sup = dm.muckenhoupt.global_sup;
  return {{"N", alpha.size()},
          {"seed", c.seed},
          {"mu", diagnostics_json(dm)},
          {"mu_minus", diagnostics_json(dn)},
          {"pair_check", pair_json(pair)},
          {"kernel_ratios", ratios},
          {"reproducing_error", repro},
          {"muckenhoupt_sup", sup},
          {"flags",
           {{"steklov_pair_plausible", pair.condition_a && pair.condition_b},
            {"pair_conditions_agree", pair.agree},
            {"muckenhoupt_sup_finite", std::isfinite(sup)},
            {"reproducing_ok", repro <= 1e-9}}}};
}

json dispatch(const RunConfig& c) {
  const std::string& s = c.subcommand;
  if (s == "moments") return cmd_moments(c);
  if (s == "levinson") return cmd_levinson(c);
  if (s == "recurrence") return cmd_recurrence(c);
  if (s == "derivatives") return cmd_derivatives(c);
  if (s == "kernels") return cmd_kernels(c);
  if (s == "diagnostics") return cmd_diagnostics(c);
  if (s == "second-kind") return cmd_second_kind(c);
  if (s == "example") return cmd_example(c);
  if (s == "prop2") return cmd_prop2(c);
  if (s == "theorem-check") return cmd_theorem_check(c);
  throw InvalidArgument("unknown subcommand '" + s + "'");
}

std::optional<std::pair<int, int>> parse_scales(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw InvalidArgument("--scales expects p0..p1");
  try {
    std::size_t a = 0;
    std::size_t b = 0;
    const int p0 = std::stoi(text.substr(0, dots), &a);
    const int p1 = std::stoi(text.substr(dots + 2), &b);
    if (a != dots || b != text.size() - dots - 2) throw std::invalid_argument("trailing");
    return std::make_pair(p0, p1);
  } catch (const std::exception&) {
    throw InvalidArgument("--scales expects p0..p1 with integer p0, p1");
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    json report = dispatch(config);
    report["schema_version"] = kSchemaVersion;
    report["subcommand"] = config.subcommand;
    const std::string text = report.dump(2) + "\n";
    if (config.output_path.empty()) {
      out << text;
    } else {
      std::ofstream f(config.output_path);
      if (!f) throw InvalidArgument("cannot write '" + config.output_path + "'");
      f << text;
    }
    return 0;
  } catch (const IndefiniteMoments& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string scales;
  CLI::App app{"Orthogonal polynomials on the unit circle: recurrences, kernels and Muckenhoupt diagnostics"};
  app.require_subcommand(1);
  app.add_option("--output", c.output_path, "Write the JSON report to this file");

  auto add_alphas = [&](CLI::App* s) { s->add_option("--alphas", c.alphas, "Coefficient preset")->required(); };
  auto add_windows = [&](CLI::App* s) {
    s->add_flag("--exact-windows", c.exact_windows, "Evaluate all windows (N <= 16384)");
    s->add_option("--scales", scales, "Dyadic scales p0..p1");
  };

  auto* moments_cmd = app.add_subcommand("moments", "Fourier moments of a weight");
  moments_cmd->add_option("--weight", c.weight, "Weight preset")->required();
  moments_cmd->add_option("--M", c.bandwidth, "Bandwidth");

  auto* lev = app.add_subcommand("levinson", "Verblunsky coefficients from the moments of a weight");
  lev->add_option("--weight", c.weight, "Weight preset")->required();
  lev->add_option("--N", c.N, "Number of coefficients");

  auto* rec = app.add_subcommand("recurrence", "Coefficients of Phi_n and Phi*_n");
  add_alphas(rec);
  rec->add_option("--n", c.n, "Degree");
  rec->add_flag("--exact", c.exact, "Exact rational arithmetic");

  auto* der = app.add_subcommand("derivatives", "j-th derivative of Phi_{n+1} at 1");
  add_alphas(der);
  der->add_option("--n", c.n, "n (derivative of Phi_{n+1})")->required();
  der->add_option("--j", c.j, "Order")->required();
  der->add_option("--method", c.method, "lemma1 | naive | dp | poly");
  der->add_flag("--exact", c.exact, "Exact rational arithmetic (n <= 12)");

  auto* ker = app.add_subcommand("kernels", "Derivative norms of the reproducing kernel at 1");
  add_alphas(ker);
  ker->add_option("--n", c.n, "Degree")->required();
  ker->add_option("--j", c.j, "Order")->required();
  ker->add_flag("--check-toeplitz", c.check_toeplitz, "Compare with the Toeplitz-inverse kernel");
  ker->add_option("--tol", c.tolerance, "Toeplitz agreement tolerance");

  auto* diag = app.add_subcommand("diagnostics", "Muckenhoupt, BMO and Steklov diagnostics");
  add_alphas(diag);
  add_windows(diag);
  diag->add_option("--csv", c.csv_path, "Dump dyadic windows as l,n,product,oscillation");

  auto* sk = app.add_subcommand("second-kind", "Coefficients of the second-kind measure");
  add_alphas(sk);
  sk->add_flag("--verify", c.verify, "Recover them from Re(1/F)");
  sk->add_option("--tol", c.tolerance, "Agreement tolerance");

  auto* ex = app.add_subcommand("example", "Oscillating example sequence and its verification table");
  ex->add_option("--delta", c.delta, "Decay exponent (> 1/2)");
  ex->add_option("--l1", c.l1, "First interval's left endpoint");
  ex->add_option("--gap", c.gap, "Gap between intervals");
  ex->add_option("--scale", c.scale, "Global multiplier in (0, 1]");
  ex->add_option("--N", c.N, "Sequence length");
  ex->add_option("--csv", c.csv_path, "Dump the coefficients");

  auto* p2 = app.add_subcommand("prop2", "Unbounded h witness alpha_k = -1/(4(k+2))");
  p2->add_option("--N", c.N, "Sequence length");

  auto* tc = app.add_subcommand("theorem-check", "Pair, kernel-ratio and Muckenhoupt pipeline");
  add_alphas(tc);
  add_windows(tc);
  tc->add_option("--seed", c.seed, "Seed for the random reproducing-property probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  for (auto* s : app.get_subcommands()) c.subcommand = s->get_name();
  if (!scales.empty()) {
    try {
      c.scales = parse_scales(scales);
    } catch (const InvalidArgument& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return run(c, out, err);
}

}  // namespace opuc
