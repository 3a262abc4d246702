#include "csgd/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csgd {

bool openmp_compiled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {
std::atomic<ExecMode> g_mode{openmp_compiled() ? ExecMode::OpenMP : ExecMode::Serial};
}

ExecMode default_exec_mode() { return g_mode.load(); }

void set_default_exec_mode(ExecMode mode) { g_mode.store(mode); }

} // namespace csgd
