#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace mginf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitIo = 3;

struct RunConfig {
  double lambda = 0.0;
  double rho = 0.0;
  std::optional<double> beta;
  std::optional<std::string> beta_file;
  double t_max = 10.0;
  std::optional<double> step;
  std::size_t cycles = 100000;
  std::uint64_t seed = 1;
  double tol = 1e-10;  ///< series truncation tolerance
  std::optional<std::string> out;
};

/// CSV of t,G,B,Z,p00,p10,indicator,bp_floor,cycle_floor,cycle_ceiling.
int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
/// busy,idle,cycle rows followed by '#'-prefixed summary lines.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
/// One PASS/FAIL/SKIPPED line per check; exit 1 on any FAIL.
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses `eval|simulate|verify` and flags, then dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mginf::cli
