#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hhinv::par {

// Worker count: min(OpenMP max, HHINV_THREADS if set and positive).
inline int thread_count() {
#ifdef _OPENMP
  static const int cached = [] {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("HHINV_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0 && cap < n) n = cap;
    }
    return n;
  }();
  return cached;
#else
  return 1;
#endif
}

inline constexpr std::int64_t kBlock = 4096;

// Left-to-right sum, kept as the serial reference for the blocked kernels.
template <class Term>
double serial_sum(std::int64_t count, Term&& term) {
  double acc = 0.0;
  for (std::int64_t i = 0; i < count; ++i) acc += term(i);
  return acc;
}

namespace detail {
// Pairwise fold in index order; deterministic and more accurate than a left fold.
inline double fold(const double* v, std::int64_t n) {
  if (n == 1) return v[0];
  const std::int64_t half = n / 2;
  return fold(v, half) + fold(v + half, n - half);
}
}  // namespace detail

// Deterministic parallel sum: fixed-size blocks are summed left-to-right, block
// results are folded pairwise in index order. The result is bit-identical for
// any thread count because rounding never depends on the schedule.
template <class Term>
double blocked_sum(std::int64_t count, Term&& term) {
  if (count <= 0) return 0.0;
  const std::int64_t nblocks = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(count, lo + kBlock);
    double acc = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  return detail::fold(partial.data(), nblocks);
}

// Same scheme for terms that emit `width` values at once (accumulated per block
// into `acc[0..width)`); results land in out[0..width).
template <class Term>
void blocked_sum_multi(std::int64_t count, int width, double* out, Term&& term) {
  for (int k = 0; k < width; ++k) out[k] = 0.0;
  if (count <= 0) return;
  const std::int64_t nblocks = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<std::size_t>(nblocks * width), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(count, lo + kBlock);
    double* acc = partial.data() + b * width;
    for (std::int64_t i = lo; i < hi; ++i) term(i, acc);
  }
  std::vector<double> column(static_cast<std::size_t>(nblocks));
  for (int k = 0; k < width; ++k) {
    for (std::int64_t b = 0; b < nblocks; ++b)
      column[static_cast<std::size_t>(b)] = partial[static_cast<std::size_t>(b * width + k)];
    out[k] = detail::fold(column.data(), nblocks);
  }
}

template <class Term>
void serial_sum_multi(std::int64_t count, int width, double* out, Term&& term) {
  for (int k = 0; k < width; ++k) out[k] = 0.0;
  for (std::int64_t i = 0; i < count; ++i) term(i, out);
}

}  // namespace hhinv::par
