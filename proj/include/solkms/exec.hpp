#pragma once

namespace solkms {

/// Execution lane for the data-parallel kernels. Serial is the reference
/// implementation; Parallel runs the same per-item work under OpenMP with an
/// order-normalized merge, so both lanes produce identical results.
enum class ExecPolicy { Serial, Parallel };

}  // namespace solkms
