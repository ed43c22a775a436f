#include "opuc/sequence.hpp"

#include <cmath>
#include <sstream>

#include "opuc/error.hpp"
#include "opuc/numeric.hpp"

namespace opuc {

CoefficientSequence::CoefficientSequence(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  const std::size_t n = alpha_.size();
  s_.resize(n);
  log_h_.resize(n + 1);
  log_pi_.resize(n + 1);
  log_h_[0] = 0.0;
  log_pi_[0] = 0.0;
  ExactSum running;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = alpha_[k];
    if (!std::isfinite(a) || std::abs(a) >= 1.0) {
      std::ostringstream msg;
      msg << "recurrence coefficient alpha_" << k << " = " << a << " must satisfy |alpha| < 1";
      throw InvalidArgument(msg.str());
    }
    running.add(a);
    s_[k] = running.value();
    log_h_[k + 1] = log_h_[k] + std::log1p(-a) - std::log1p(a);
    log_pi_[k + 1] = log_pi_[k] + std::log1p(-a * a);
    szego_sum_ += a * a;
    max_abs_ = std::max(max_abs_, std::abs(a));
  }
}

double CoefficientSequence::step_ratio(std::size_t t) const {
  return (1.0 + alpha_[t]) / (1.0 - alpha_[t]);
}

double CoefficientSequence::two_s_plus_log_h(std::size_t n) const {
  return 2.0 * s_[n] + log_h_[n + 1];
}

CoefficientSequence CoefficientSequence::negated() const {
  std::vector<double> out(alpha_.size());
  for (std::size_t k = 0; k < alpha_.size(); ++k) out[k] = -alpha_[k];
  return CoefficientSequence(std::move(out));
}

CoefficientSequence CoefficientSequence::prefix(std::size_t n) const {
  if (n > alpha_.size()) throw InvalidArgument("prefix longer than the sequence");
  return CoefficientSequence(std::vector<double>(alpha_.begin(), alpha_.begin() + n));
}

CoefficientSequence CoefficientSequence::zero_extended(std::size_t n) const {
  std::vector<double> out = alpha_;
  if (n > out.size()) out.resize(n, 0.0);
  return CoefficientSequence(std::move(out));
}

}  // namespace opuc
