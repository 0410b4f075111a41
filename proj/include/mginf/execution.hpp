#pragma once

namespace mginf {

// Serial is the reference path; Parallel fans out with OpenMP and must
// produce bitwise-identical results.
enum class Execution { Serial, Parallel };

}  // namespace mginf
