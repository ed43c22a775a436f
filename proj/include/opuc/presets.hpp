#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opuc/measures.hpp"
#include "opuc/sequence.hpp"

namespace opuc {

/// Coefficient presets:
///   zero:N | const:c,N | power:c,delta,N (alpha_k = c/(k+2)^delta) | prop2:N | file:path.csv
CoefficientSequence parse_alpha_preset(std::string_view spec);

/// Weight presets:
///   lebesgue | poisson:a | trig:c0,c1,... (c0 + Σ c_k cos kθ) | grid:path.csv | bs:<coefficient preset>
Weight parse_weight_preset(std::string_view spec);

/// One number per line; blank lines and lines starting with '#' are skipped.
std::vector<double> read_csv_column(const std::string& path);

}  // namespace opuc
