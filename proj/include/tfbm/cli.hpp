#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tfbm::cli {

enum ExitCode { kOk = 0, kFailure = 1, kInvalidInput = 2, kNumericalFailure = 3 };

/// Runs the command line `args` (without the program name). Every option can
/// also be set through TFBM_<NAME> environment variables, e.g. TFBM_SEED.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a:b:step" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

/// A named power-study configuration matching one of the published figures.
struct Preset {
  std::string name;
  std::string description;
  std::string kind;
  double hurst = 0.0;
  double lambda = 0.0;
  std::string alt_kinds;
  std::string alt_hurst;
  std::string alt_lambda;
  std::string sample_sizes = "200,1000";
  double horizon = 10.0;
};

const std::vector<Preset>& presets();

}  // namespace tfbm::cli
