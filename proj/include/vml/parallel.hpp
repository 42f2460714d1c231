#pragma once

#include <cstddef>

#ifdef VML_HAVE_OPENMP
#include <omp.h>
#endif

namespace vml {

// Parallel loop over [0, n). Each iteration must write only to its own
// output slot; results are then identical for any thread count, which the
// reporting layer relies on for byte-stable output.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
#ifdef VML_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    fn(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

// Serial reference loop. Kernels keep a *_serial variant built on this so
// tests can pin the parallel path against it.
template <class F>
void serial_for(std::size_t n, F&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

inline int max_threads() {
#ifdef VML_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace vml
