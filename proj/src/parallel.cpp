#include "tomokit/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tomokit {

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("TOMOKIT_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap > 0) n = std::min(n, cap);
        } catch (...) {
            // ignore malformed values, keep the OpenMP default
        }
    }
    return std::max(n, 1);
}

} // namespace tomokit
