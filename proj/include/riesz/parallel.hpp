#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// OpenMP-parallel grid kernels. Every parallel entry point has a serial twin
// (Mode::serial) that runs the identical per-point code; results must match
// bit for bit because points are independent and no reductions are reordered.
namespace riesz::par {

enum class Mode { serial, openmp };

template <class Body>
void for_index(std::size_t count, Body&& body, Mode mode = Mode::openmp) {
    if (mode == Mode::serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(riesz_par_error)
#endif
            {
                if (!first_error) first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

template <class Fn>
std::vector<double> map_grid(std::span<const double> xs, Fn&& f, Mode mode = Mode::openmp) {
    std::vector<double> out(xs.size());
    for_index(xs.size(), [&](std::size_t i) { out[i] = f(xs[i]); }, mode);
    return out;
}

inline int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_thread_count(int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

} // namespace riesz::par
