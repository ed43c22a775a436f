#include "opuc/presets.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "opuc/constructions.hpp"
#include "opuc/error.hpp"

namespace opuc {

namespace {

std::vector<std::string> split_args(std::string_view s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.emplace_back(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(const std::string& text, std::string_view preset) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << "preset '" << preset << "': '" << text << "' is not a finite number";
    throw InvalidArgument(msg.str());
  }
  return v;
}

std::size_t parse_count(const std::string& text, std::string_view preset) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    std::ostringstream msg;
    msg << "preset '" << preset << "': '" << text << "' is not a non-negative integer";
    throw InvalidArgument(msg.str());
  }
  return v;
}

void require_arity(const std::vector<std::string>& args, std::size_t n, std::string_view preset,
                   const char* usage) {
  if (args.size() != n) {
    std::ostringstream msg;
    msg << "preset '" << preset << "' expects " << usage;
    throw InvalidArgument(msg.str());
  }
}

CoefficientSequence checked(std::vector<double> a, std::string_view preset) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(std::abs(a[k]) < 1.0)) {
      std::ostringstream msg;
      msg << "preset '" << preset << "': alpha_" << k << " = " << a[k] << " violates |alpha| < 1";
      throw InvalidArgument(msg.str());
    }
  }
  return CoefficientSequence(std::move(a));
}

}  // namespace

std::vector<double> read_csv_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r,");
    const std::string field = line.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size() || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << path << ":" << lineno << ": '" << field << "' is not a finite number";
      throw InvalidArgument(msg.str());
    }
    out.push_back(v);
  }
  return out;
}

CoefficientSequence parse_alpha_preset(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (name == "file") return checked(read_csv_column(std::string(rest)), spec);
  const auto args = split_args(rest);
  if (name == "zero") {
    require_arity(args, 1, spec, "zero:N");
    return CoefficientSequence(std::vector<double>(parse_count(args[0], spec), 0.0));
  }
  if (name == "const") {
    require_arity(args, 2, spec, "const:c,N");
    return checked(std::vector<double>(parse_count(args[1], spec), parse_real(args[0], spec)), spec);
  }
  if (name == "power") {
    require_arity(args, 3, spec, "power:c,delta,N");
    const double c = parse_real(args[0], spec);
    const double delta = parse_real(args[1], spec);
    std::vector<double> a(parse_count(args[2], spec));
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = c / std::pow(static_cast<double>(k) + 2.0, delta);
    return checked(std::move(a), spec);
  }
  if (name == "prop2") {
    require_arity(args, 1, spec, "prop2:N");
    return prop2_sequence(parse_count(args[0], spec));
  }
  std::ostringstream msg;
  msg << "unknown coefficient preset '" << spec << "' (expected zero:, const:, power:, prop2: or file:)";
  throw InvalidArgument(msg.str());
}

Weight parse_weight_preset(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (name == "lebesgue") return Weight::lebesgue();
  if (name == "poisson") {
    const auto args = split_args(rest);
    require_arity(args, 1, spec, "poisson:a");
    const double a = parse_real(args[0], spec);
    if (!(std::abs(a) < 1.0)) throw InvalidArgument("poisson:a needs |a| < 1");
    return Weight::poisson(a);
  }
  if (name == "trig") {
    std::vector<double> c;
    for (const auto& s : split_args(rest)) c.push_back(parse_real(s, spec));
    if (c.empty()) throw InvalidArgument("trig preset needs at least c0");
    return Weight::from_cosine_series(c);
  }
  if (name == "grid") {
    auto samples = read_csv_column(std::string(rest));
    if (!is_power_of_two(samples.size())) {
      std::ostringstream msg;
      msg << "grid weight '" << rest << "' has " << samples.size() << " samples; a power of two is required";
      throw InvalidArgument(msg.str());
    }
    return Weight::from_samples(std::move(samples));
  }
  if (name == "bs") return Weight::bernstein_szego(parse_alpha_preset(rest));
  std::ostringstream msg;
  msg << "unknown weight preset '" << spec << "' (expected lebesgue, poisson:, trig:, grid: or bs:)";
  throw InvalidArgument(msg.str());
}

}  // namespace opuc
