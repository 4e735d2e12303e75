#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dlda {

// Execution mode for the data-parallel kernels. Every kernel has a plain
// serial loop and an OpenMP loop computing bit-identical results; the serial
// path is the reference the tests compare against.
enum class ExecMode { Serial, OpenMP };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace dlda
