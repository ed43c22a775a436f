#include "opuc/measures.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>

#include "opuc/error.hpp"
#include "opuc/opuc.hpp"

namespace opuc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t trig_check_grid(int degree) {
  std::size_t g = 1024;
  while (g < 32 * static_cast<std::size_t>(degree + 1)) g *= 2;
  return g;
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t default_grid_size() {
  if (const char* env = std::getenv("OPUC_GRID_LOG2")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 4 || v > 24)
      throw InvalidArgument("OPUC_GRID_LOG2 must be an integer in [4, 24], got '" +
                            std::string(env) + "'");
    return std::size_t{1} << v;
  }
  return kDefaultGridSize;
}

std::vector<Complex> dft(std::vector<Complex> data, int sign) {
  if (!is_power_of_two(data.size())) throw InvalidArgument("DFT size must be a power of two");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return data;
}

std::vector<Complex> evaluate_on_grid(int min_degree, std::span<const Complex> coeffs,
                                      std::size_t grid_size) {
  const auto g = static_cast<long>(grid_size);
  std::vector<Complex> folded(grid_size);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    long k = (min_degree + static_cast<long>(i)) % g;
    if (k < 0) k += g;
    folded[static_cast<std::size_t>(k)] += coeffs[i];
  }
  return dft(std::move(folded), +1);
}

// ---------------------------------------------------------------------------
// MomentTable

bool MomentTable::is_hermitian(double tol) const {
  for (int k = 0; k <= bandwidth; ++k)
    if (std::abs((*this)[-k] - std::conj((*this)[k])) > tol) return false;
  return true;
}

bool MomentTable::is_real(double tol) const {
  for (const Complex& v : values)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// TrigPolynomial

TrigPolynomial::TrigPolynomial(int min_degree, std::vector<Complex> coefficients)
    : min_degree_(min_degree), coeffs_(std::move(coefficients)) {}

bool TrigPolynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == 0.0; });
}

Complex TrigPolynomial::coefficient(int k) const {
  long i = static_cast<long>(k) - min_degree_;
  if (i < 0 || i >= static_cast<long>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Complex TrigPolynomial::operator()(double theta) const {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    acc += coeffs_[i] * std::polar(1.0, (min_degree_ + static_cast<double>(i)) * theta);
  return acc;
}

std::vector<Complex> TrigPolynomial::grid_values(std::size_t grid_size) const {
  return evaluate_on_grid(min_degree_, coeffs_, grid_size);
}

TrigPolynomial analytic_projection(const TrigPolynomial& f) {
  if (f.is_zero() || f.max_degree() < 0) return {};
  std::vector<Complex> kept;
  for (int k = std::max(0, f.min_degree()); k <= f.max_degree(); ++k) kept.push_back(f.coefficient(k));
  return TrigPolynomial(0, std::move(kept));
}

// ---------------------------------------------------------------------------
// Weight

Weight Weight::lebesgue() { return Weight(TrigPolynomial(0, {1.0}), 1.0); }

Weight Weight::from_samples(std::vector<double> samples) {
  if (samples.empty()) throw InvalidArgument("grid weight needs at least one sample");
  ExactSum mass;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i]) || samples[i] < 0.0) {
      std::ostringstream msg;
      msg << "grid weight sample " << i << " = " << samples[i] << " is not a finite non-negative number";
      throw InvalidArgument(msg.str());
    }
    mass.add(samples[i]);
  }
  double scale = mass.value() / static_cast<double>(samples.size());
  if (!(scale > 0.0)) throw InvalidArgument("grid weight has zero total mass");
  for (double& v : samples) v /= scale;
  return Weight(std::move(samples), scale);
}

Weight Weight::from_fourier(int degree, std::vector<Complex> coefficients) {
  if (degree < 0 || coefficients.size() != static_cast<std::size_t>(2 * degree + 1))
    throw InvalidArgument("trig weight needs 2d+1 coefficients for degree d");
  const Complex c0 = coefficients[static_cast<std::size_t>(degree)];
  double norm = 0.0;
  for (const Complex& c : coefficients) norm += std::abs(c);
  for (int k = 0; k <= degree; ++k) {
    Complex lo = coefficients[static_cast<std::size_t>(degree - k)];
    Complex hi = coefficients[static_cast<std::size_t>(degree + k)];
    if (std::abs(lo - std::conj(hi)) > 1e-12 * std::max(1.0, norm))
      throw InvalidArgument("trig weight coefficients must satisfy ŵ(-k) = conj(ŵ(k))");
  }
  if (!(c0.real() > 0.0)) throw InvalidArgument("trig weight must have positive mass ŵ(0)");
  TrigPolynomial p(-degree, std::move(coefficients));
  const std::size_t g = trig_check_grid(degree);
  auto vals = p.grid_values(g);
  for (std::size_t i = 0; i < g; ++i) {
    if (vals[i].real() < -1e-12 * std::max(1.0, norm)) {
      std::ostringstream msg;
      msg << "trig weight is negative at theta = " << kTwoPi * static_cast<double>(i) / static_cast<double>(g)
          << " (value " << vals[i].real() << ")";
      throw InvalidArgument(msg.str());
    }
  }
  const double scale = c0.real();
  std::vector<Complex> normalized(p.coefficients().begin(), p.coefficients().end());
  for (Complex& c : normalized) c /= scale;
  return Weight(TrigPolynomial(-degree, std::move(normalized)), scale);
}

Weight Weight::from_cosine_series(std::span<const double> c) {
  if (c.empty()) throw InvalidArgument("cosine series needs at least c0");
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<Complex> coeffs(static_cast<std::size_t>(2 * d + 1));
  coeffs[static_cast<std::size_t>(d)] = c[0];
  for (int k = 1; k <= d; ++k) {
    coeffs[static_cast<std::size_t>(d + k)] = c[static_cast<std::size_t>(k)] / 2.0;
    coeffs[static_cast<std::size_t>(d - k)] = c[static_cast<std::size_t>(k)] / 2.0;
  }
  return from_fourier(d, std::move(coeffs));
}

Weight Weight::bernstein_szego(const CoefficientSequence& alpha) { return Weight(alpha, 1.0); }

Weight Weight::poisson(double a) {
  return bernstein_szego(CoefficientSequence(std::vector<double>{a}));
}

Weight::Kind Weight::kind() const {
  return std::visit(Overloaded{[](const std::vector<double>&) { return Kind::grid; },
                               [](const TrigPolynomial&) { return Kind::trigpoly; },
                               [](const CoefficientSequence&) { return Kind::bernstein_szego; }},
                    data_);
}

bool Weight::symmetric() const {
  switch (kind()) {
    case Kind::bernstein_szego:
      return true;
    case Kind::trigpoly:
      for (const Complex& c : trig().coefficients())
        if (std::abs(c.imag()) > 1e-10) return false;
      return true;
    case Kind::grid: {
      const auto& s = samples();
      return grid_moments(s, static_cast<int>(s.size() / 4)).is_real(1e-10);
    }
  }
  return false;
}

double Weight::operator()(double theta) const {
  return std::visit(
      Overloaded{[&](const std::vector<double>& s) {
                   const double g = static_cast<double>(s.size());
                   double x = std::fmod(theta / kTwoPi, 1.0);
                   if (x < 0) x += 1.0;
                   x *= g;
                   auto i0 = static_cast<std::size_t>(std::floor(x)) % s.size();
                   std::size_t i1 = (i0 + 1) % s.size();
                   double f = x - std::floor(x);
                   return (1.0 - f) * s[i0] + f * s[i1];
                 },
                 [&](const TrigPolynomial& p) { return p(theta).real(); },
                 [&](const CoefficientSequence& a) {
                   Complex v = phistar_value(a, std::polar(1.0, theta));
                   return std::exp(a.log_pi()[a.size()]) / std::norm(v);
                 }},
      data_);
}

std::vector<double> Weight::grid_values(std::size_t grid_size) const {
  if (!is_power_of_two(grid_size)) throw InvalidArgument("grid size must be a power of two");
  std::vector<double> out(grid_size);
  switch (kind()) {
    case Kind::grid: {
      const auto& s = samples();
      if (s.size() != grid_size) {
        std::ostringstream msg;
        msg << "grid weight has " << s.size() << " samples; cannot evaluate on " << grid_size;
        throw InvalidArgument(msg.str());
      }
      return std::vector<double>(s.begin(), s.end());
    }
    case Kind::trigpoly: {
      auto v = trig().grid_values(grid_size);
      for (std::size_t i = 0; i < grid_size; ++i) out[i] = v[i].real();
      return out;
    }
    case Kind::bernstein_szego: {
      const auto& a = source();
      const double pi_n = std::exp(a.log_pi()[a.size()]);
      if (a.size() <= 2048) {
        auto pair = szego_recurrence<double>(a.alpha(), a.size());
        std::vector<Complex> c(pair.phistar.begin(), pair.phistar.end());
        auto v = evaluate_on_grid(0, c, grid_size);
        for (std::size_t i = 0; i < grid_size; ++i) out[i] = pi_n / std::norm(v[i]);
      } else {
        for (std::size_t i = 0; i < grid_size; ++i) {
          double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(grid_size);
          out[i] = pi_n / std::norm(phistar_value(a, std::polar(1.0, theta)));
        }
      }
      return out;
    }
  }
  return out;
}

std::size_t Weight::natural_grid_size(std::size_t fallback) const {
  return kind() == Kind::grid ? samples().size() : fallback;
}

const CoefficientSequence& Weight::source() const {
  if (auto* p = std::get_if<CoefficientSequence>(&data_)) return *p;
  throw InvalidArgument("weight is not of Bernstein–Szegő kind");
}

const TrigPolynomial& Weight::trig() const {
  if (auto* p = std::get_if<TrigPolynomial>(&data_)) return *p;
  throw InvalidArgument("weight is not a trigonometric polynomial");
}

std::span<const double> Weight::samples() const {
  if (auto* p = std::get_if<std::vector<double>>(&data_)) return *p;
  throw InvalidArgument("weight is not grid-sampled");
}

// ---------------------------------------------------------------------------
// Moments and transforms

MomentTable grid_moments(std::span<const double> samples, int bandwidth) {
  if (bandwidth < 0) throw InvalidArgument("moment bandwidth must be non-negative");
  const std::size_t g = samples.size();
  if (g < 4 * static_cast<std::size_t>(bandwidth)) {
    std::ostringstream msg;
    msg << "grid of " << g << " samples is too coarse for bandwidth " << bandwidth
        << "; need at least " << 4 * static_cast<std::size_t>(bandwidth) << " samples";
    throw InvalidArgument(msg.str());
  }
  if (!is_power_of_two(g)) throw InvalidArgument("grid size must be a power of two");
  auto spectrum = dft(std::vector<Complex>(samples.begin(), samples.end()), -1);
  MomentTable out;
  out.bandwidth = bandwidth;
  out.values.resize(static_cast<std::size_t>(2 * bandwidth + 1));
  const double inv = 1.0 / static_cast<double>(g);
  for (int k = -bandwidth; k <= bandwidth; ++k) {
    std::size_t idx = static_cast<std::size_t>((k % static_cast<long>(g) + static_cast<long>(g)) %
                                               static_cast<long>(g));
    out.values[static_cast<std::size_t>(k + bandwidth)] = spectrum[idx] * inv;
  }
  return out;
}

MomentTable moments(const Weight& w, int bandwidth) {
  if (bandwidth < 0) throw InvalidArgument("moment bandwidth must be non-negative");
  switch (w.kind()) {
    case Weight::Kind::grid:
      return grid_moments(w.samples(), bandwidth);
    case Weight::Kind::trigpoly: {
      MomentTable out;
      out.bandwidth = bandwidth;
      out.values.resize(static_cast<std::size_t>(2 * bandwidth + 1));
      for (int k = -bandwidth; k <= bandwidth; ++k)
        out.values[static_cast<std::size_t>(k + bandwidth)] = w.trig().coefficient(k);
      return out;
    }
    case Weight::Kind::bernstein_szego:
      return bernstein_szego_moments(w.source(), bandwidth);
  }
  return {};
}

HilbertTransform hilbert_transform(const Weight& w, int bandwidth, std::size_t grid_size) {
  MomentTable m = moments(w, bandwidth);
  std::vector<Complex> c(static_cast<std::size_t>(bandwidth + 1));
  for (int k = 0; k <= bandwidth; ++k) c[static_cast<std::size_t>(k)] = m[k];
  HilbertTransform out;
  out.values = evaluate_on_grid(0, c, grid_size);
  for (const Complex& v : out.values) out.sup_norm = std::max(out.sup_norm, std::abs(v));
  return out;
}

CaratheodoryFunction::CaratheodoryFunction(std::vector<Complex> taylor) : taylor_(std::move(taylor)) {
  if (taylor_.empty()) throw InvalidArgument("Carathéodory function needs at least c_0");
}

Complex CaratheodoryFunction::operator()(Complex z) const {
  Complex acc = 0.0;
  for (std::size_t i = taylor_.size(); i-- > 0;) acc = acc * z + taylor_[i];
  return acc;
}

std::vector<Complex> CaratheodoryFunction::values_on_circle(double radius, std::size_t grid_size) const {
  std::vector<Complex> c(taylor_);
  double rk = 1.0;
  for (Complex& v : c) {
    v *= rk;
    rk *= radius;
  }
  return evaluate_on_grid(0, c, grid_size);
}

double CaratheodoryFunction::min_real_part(double radius, std::size_t grid_size) const {
  double lo = kInf;
  for (const Complex& v : values_on_circle(radius, grid_size)) lo = std::min(lo, v.real());
  return lo;
}

bool CaratheodoryFunction::satisfies_invariants(std::size_t grid_size, double tol) const {
  if (std::abs(taylor_[0] - 1.0) > tol) return false;
  for (double r : {0.5, 0.9, 0.99})
    if (min_real_part(r, grid_size) < -tol) return false;
  return true;
}

CaratheodoryFunction caratheodory(const MomentTable& m) {
  std::vector<Complex> c(static_cast<std::size_t>(m.bandwidth + 1));
  c[0] = m[0];
  for (int k = 1; k <= m.bandwidth; ++k) c[static_cast<std::size_t>(k)] = 2.0 * m[k];
  return CaratheodoryFunction(std::move(c));
}

SteklovInf steklov_inf(const Weight& w, double threshold, std::size_t grid_size) {
  auto v = w.grid_values(w.natural_grid_size(grid_size));
  SteklovInf out;
  out.inf = *std::min_element(v.begin(), v.end());
  out.steklov = out.inf > threshold;
  return out;
}

}  // namespace opuc
