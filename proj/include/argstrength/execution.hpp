#pragma once

namespace argstrength {

/// Selects between the serial reference loop and the OpenMP kernel.
/// Both must produce identical results; the serial path is kept for tests
/// and benchmarks.
enum class Execution { serial, parallel };

/// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace argstrength
