#pragma once

namespace brre {

/// Selects the serial reference loop or the OpenMP loop for data-parallel kernels.
/// Both paths produce identical results.
enum class Execution { Serial, Parallel };

}  // namespace brre
