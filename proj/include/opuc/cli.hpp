#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace opuc {

inline constexpr int kSchemaVersion = 1;

/// Parsed command line. Unset optionals fall back to per-subcommand defaults.
struct RunConfig {
  std::string subcommand;
  std::string alphas;  // coefficient preset
  std::string weight;  // weight preset
  std::optional<long> N;
  std::optional<long> n;
  std::optional<int> j;
  std::optional<int> bandwidth;
  std::string method = "dp";
  bool exact = false;
  double delta = 0.6;
  long l1 = 8;
  long gap = 1;
  double scale = 1.0;
  bool exact_windows = false;
  std::optional<std::pair<int, int>> scales;
  bool check_toeplitz = false;
  bool verify = false;
  std::string csv_path;
  std::string output_path;
  std::uint64_t seed = 1;
  std::optional<double> tolerance;
};

/// Executes one subcommand. Returns 0 on success, 1 on a validation error,
/// 2 on a numerical failure; messages go to `err`, JSON to `out` or the output file.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace opuc
