#pragma once

namespace qrelay {

// Execution policy for the embarrassingly parallel kernels (Monte-Carlo trials,
// optimizer restarts). Work items fill per-index slots and the reduction runs
// in fixed order afterwards, so both policies produce bit-identical results;
// `serial` is kept as the reference implementation for tests and benchmarks.
enum class Exec { serial, parallel };

}  // namespace qrelay
