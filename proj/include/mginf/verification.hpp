#pragma once

#include "mginf/model_params.hpp"
#include "mginf/riccati_general.hpp"
#include "mginf/transform_series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mginf {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string detail;
};

std::string_view to_string(CheckStatus status) noexcept;

struct VerifyInputs {
  KernelContext ctx;
  std::optional<double> constant_beta;  ///< set when beta is a constant
  GridSpec grid;
  double series_tol;
  std::size_t cycles;
  std::uint64_t seed;
};

/// Cross-checks every analytic route against the others (closed forms,
/// general Riccati solution, transforms, convolution series, envelopes) and
/// against a seeded simulation, for one parameter point. Checks that need a
/// closed form are reported Skipped for tabulated beta.
std::vector<CheckResult> verify_point(const VerifyInputs& in);

}  // namespace mginf
