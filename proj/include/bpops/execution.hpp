#pragma once

namespace bpops {

/// Selects between the serial reference kernel and the OpenMP kernel.
/// Both produce identical results; the serial path is kept for testing.
enum class Execution { serial, parallel };

/// Threads the parallel kernels will use (1 without OpenMP).
int available_threads();

}  // namespace bpops
