#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dedonder/numeric/cauchy.hpp"
#include "dedonder/problem.hpp"
#include "dedonder/report.hpp"

namespace dedonder {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

struct CommandOptions {
  std::optional<std::string> out_dir;
  bool json = false;
  std::optional<int> grid_n;
  std::optional<double> t1;
  std::uint64_t seed = 20240611;
};

struct Failure {
  std::string check;
  std::string detail;
};

struct CommandResult {
  int exit_code = kExitPass;
  Json json;          // full structured result, always populated
  std::string text;   // human-readable rendering
  std::string csv;    // evolve only
  std::vector<Failure> failures;
};

const std::vector<std::string>& command_names();

// Throws JetError / std::invalid_argument for semantic problems in the spec
// that only surface when a command runs (the CLI maps these to exit 2).
CommandResult run_command(const ProblemSpec& spec, const std::string& command,
                          const CommandOptions& opts = {});

// Band-limited random Cauchy data on a periodic line (modes 1..8).
CauchyState random_cauchy_data(const GridDim& space, int n_fields, double t0, std::uint64_t seed);

// Q^{12}_a = y^a, Q^{21}_a = -y^a for every a (needs m = 2, k >= 2).
SkewPerturbation default_skew(const JetConfig& cfg);

// Sets the stderr logger level from a name (trace, debug, info, warn, error, off).
void configure_logging(const char* level);

}  // namespace dedonder
