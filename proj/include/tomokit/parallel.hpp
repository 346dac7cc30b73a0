#pragma once

#include <cstdint>

namespace tomokit {

// Execution policy for the data-parallel kernels. Every kernel that accepts
// an Exec computes each output slot independently, so the parallel path is
// bit-identical to the serial one regardless of thread count.
enum class Exec {
    serial,
    parallel,
};

// Thread budget: min(omp_get_max_threads(), TOMOKIT_THREADS) when the
// environment variable is set and positive.
int max_threads();

namespace detail {

template <typename Fn>
void run_indexed(std::int64_t n, const Fn& fn) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

} // namespace detail

// Apply fn(i) for i in [0, n). Each invocation must write only its own
// output slots; inner reductions stay serial per slot.
template <typename Fn>
void parallel_for(std::int64_t n, Exec exec, const Fn& fn) {
    if (exec == Exec::serial || n < 2 || max_threads() < 2) {
        detail::run_indexed(n, fn);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#else
    detail::run_indexed(n, fn);
#endif
}

} // namespace tomokit
