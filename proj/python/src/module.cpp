#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "opuc/cli.hpp"
#include "opuc/constructions.hpp"
#include "opuc/derivatives.hpp"
#include "opuc/diagnostics.hpp"
#include "opuc/error.hpp"
#include "opuc/kernels.hpp"
#include "opuc/measures.hpp"
#include "opuc/opuc.hpp"
#include "opuc/presets.hpp"

namespace py = pybind11;
using namespace opuc;

namespace {

CoefficientSequence sequence(const std::vector<double>& a) { return CoefficientSequence(a); }

std::vector<Rational> rationals(const std::vector<std::pair<long, long>>& a) {
  std::vector<Rational> out;
  for (auto [p, q] : a) {
    if (q == 0) throw InvalidArgument("zero denominator");
    out.push_back(make_rational(p, q));
  }
  return out;
}

py::tuple signed_log(const SignedLog& v) { return py::make_tuple(v.sign, v.log10_abs()); }

py::dict window(const Window& w) {
  py::dict d;
  d["l"] = w.begin;
  d["n"] = w.end;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "OPUC core bindings";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  m.def(
      "szego_recurrence",
      [](const std::vector<double>& alphas, std::size_t n) {
        auto p = szego_recurrence<double>(std::span<const double>(alphas), n);
        return py::make_tuple(p.phi, p.phistar);
      },
      py::arg("alphas"), py::arg("n"), "Coefficients (low to high) of Phi_n and Phi*_n.");

  m.def(
      "derivative",
      [](const std::vector<double>& alphas, std::size_t n, int j, const std::string& method) {
        const auto a = sequence(alphas);
        if (a.size() < n + 1) throw InvalidArgument("derivative needs n+1 coefficients");
        if (method == "dp") return signed_log(j == 0 ? phi_at_one(a, n + 1) : lemma2_dp(a, n, j));
        if (method == "lemma1") return signed_log(SignedLog::from_value(lemma1_derivative<double>(a.alpha(), n, j).first));
        if (method == "naive") return signed_log(SignedLog::from_value(lemma2_naive<double>(a.alpha(), n, j)));
        if (method == "poly") return signed_log(SignedLog::from_value(polynomial_derivative<double>(a.alpha(), n, j)));
        throw InvalidArgument("method must be dp, lemma1, naive or poly");
      },
      py::arg("alphas"), py::arg("n"), py::arg("j"), py::arg("method") = "dp",
      "(sign, log10 |value|) of the j-th derivative of Phi_{n+1} at 1.");

  m.def(
      "derivative_exact",
      [](const std::vector<std::pair<long, long>>& alphas, std::size_t n, int j) {
        const auto q = rationals(alphas);
        const Rational v = lemma2_dp(std::span<const Rational>(q), n, j);
        return py::make_tuple(BigInt(v.get_num()).get_str(), BigInt(v.get_den()).get_str());
      },
      py::arg("alphas"), py::arg("n"), py::arg("j"),
      "Exact derivative from (p, q) coefficient pairs, as (numerator, denominator) strings.");

  m.def(
      "kernel_norm",
      [](const std::vector<double>& alphas, std::size_t n, int j) { return kernel_norm_mu(sequence(alphas), n, j).log10_value(); },
      py::arg("alphas"), py::arg("n"), py::arg("j"), "log10 of the squared derivative norm of the kernel at 1.");

  m.def(
      "lebesgue_norm", [](std::size_t n, int j) { return kernel_norm_lebesgue(n, j).norm.log10_value(); }, py::arg("n"),
      py::arg("j"), "log10 of the Lebesgue-measure kernel norm.");

  m.def(
      "lemma5_ratio", [](long n, int j) { return lemma5_ratio(n, j).ratio(); }, py::arg("n"), py::arg("j"),
      "kappa_j(n) / kappa_j(n_j).");

  m.def(
      "moments",
      [](const std::string& weight, int bandwidth) { return moments(parse_weight_preset(weight), bandwidth).values; },
      py::arg("weight"), py::arg("bandwidth"), "Moments w(-M)..w(M) of a weight preset.");

  m.def(
      "bernstein_szego_moments",
      [](const std::vector<double>& alphas, int bandwidth) {
        return bernstein_szego_moments(sequence(alphas), bandwidth).values;
      },
      py::arg("alphas"), py::arg("bandwidth"));

  m.def(
      "levinson",
      [](const std::vector<Complex>& values, std::size_t count) {
        if (values.size() % 2 == 0) throw InvalidArgument("moments must be listed from -M to M");
        MomentTable t{static_cast<int>(values.size() / 2), values};
        return levinson(t, count);
      },
      py::arg("moments"), py::arg("count"), "Verblunsky coefficients from moments w(-M)..w(M).");

  m.def(
      "second_kind",
      [](const std::vector<double>& alphas) {
        const auto r = second_kind(sequence(alphas));
        py::dict d;
        d["negated"] = std::vector<double>(r.negated.alpha().begin(), r.negated.alpha().end());
        d["analytic"] = std::vector<double>(r.analytic.alpha().begin(), r.analytic.alpha().end());
        d["max_deviation"] = r.max_deviation;
        d["min_real_part"] = r.min_real_part;
        return d;
      },
      py::arg("alphas"));

  m.def(
      "diagnostics",
      [](const std::vector<double>& alphas, bool exact_windows) {
        WindowOptions o;
        o.policy = exact_windows ? WindowPolicy::exact : WindowPolicy::dyadic;
        const auto r = diagnose(sequence(alphas), o);
        py::dict d;
        d["N"] = r.N;
        d["muckenhoupt_sup"] = r.muckenhoupt.global_sup;
        d["muckenhoupt_log_sup"] = r.muckenhoupt.log_global_sup;
        d["muckenhoupt_argmax"] = window(r.muckenhoupt.argmax);
        d["bmo_sup"] = r.bmo.global_sup;
        d["bmo_argmax"] = window(r.bmo.argmax);
        d["steklov_bound_c"] = r.steklov_bound_c;
        d["szego_sum"] = r.szego_sum;
        d["two_s_plus_log_h_sup"] = r.two_s_plus_log_h_sup;
        return d;
      },
      py::arg("alphas"), py::arg("exact_windows") = false);

  m.def(
      "example_sequence",
      [](double delta, long l1, long gap, std::size_t N, double scale) {
        const auto ex = example_sequence({delta, l1, gap, N, scale});
        return std::vector<double>(ex.alpha.alpha().begin(), ex.alpha.alpha().end());
      },
      py::arg("delta") = 0.6, py::arg("l1") = 8, py::arg("gap") = 1, py::arg("N") = 100000, py::arg("scale") = 1.0);

  m.def(
      "prop2_verify",
      [](std::size_t N) {
        const auto r = prop2_verify(N);
        py::dict d;
        d["h1"] = r.h1;
        d["h_increasing"] = r.h_increasing;
        d["slope"] = r.slope;
        d["min_log_ratio"] = r.min_log_ratio;
        d["max_log_ratio"] = r.max_log_ratio;
        d["w_decreasing"] = r.w_decreasing;
        return d;
      },
      py::arg("N"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"opuc"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
