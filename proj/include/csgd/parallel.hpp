#pragma once

#include <cstddef>

namespace csgd {

/// Execution path for the data-parallel kernels (Gram assembly, Monte Carlo
/// trials, audit sampling). Serial is the reference implementation; both
/// paths produce bit-identical results because every loop iteration writes
/// its own slot and reductions run serially in index order.
enum class ExecMode { Serial, OpenMP };

bool openmp_compiled();
int max_threads();

ExecMode default_exec_mode();
void set_default_exec_mode(ExecMode mode);

} // namespace csgd
