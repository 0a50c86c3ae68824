#pragma once

namespace misseat {

/// Selects between the serial reference path and the OpenMP kernel.
/// Both produce bit-identical results; `serial` exists so tests and the
/// benchmark can compare against it.
enum class Execution { serial, parallel };

/// Workers the parallel path would use (1 when built without OpenMP).
int worker_count();

}  // namespace misseat
