#pragma once

// Parallel kernels. Each has a serial twin selected by Exec; both produce
// identical results, which the tests and the benchmark rely on.

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

namespace snorm {

enum class Exec { serial, parallel };

/// Smallest i in [0, limit) with pred(i), or nothing. The parallel form
/// evaluates batches of `batch` indices and keeps the lowest success, so
/// the answer never depends on the thread count.
template <class Pred>
std::optional<std::uint64_t> first_success(std::uint64_t limit, std::uint64_t batch, Pred&& pred, Exec exec) {
  if (exec == Exec::serial || batch <= 1) {
    for (std::uint64_t i = 0; i < limit; ++i) {
      if (pred(i)) return i;
    }
    return std::nullopt;
  }
  for (std::uint64_t start = 0; start < limit; start += batch) {
    const std::uint64_t end = std::min(limit, start + batch);
    const auto n = static_cast<std::int64_t>(end - start);
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < n; ++k) {
      try {
        hit[static_cast<std::size_t>(k)] = pred(start + static_cast<std::uint64_t>(k)) ? 1 : 0;
      } catch (...) {
#pragma omp critical(snorm_first_success)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (std::int64_t k = 0; k < n; ++k) {
      if (hit[static_cast<std::size_t>(k)]) return start + static_cast<std::uint64_t>(k);
    }
  }
  return std::nullopt;
}

/// out[i] = f(i) for i in [0, n).
template <class T, class F>
std::vector<T> map_indices(std::uint64_t n, F&& f, Exec exec) {
  std::vector<T> out(n);
  if (exec == Exec::serial) {
    for (std::uint64_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(snorm_map_indices)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// Sets the OpenMP thread count; 0 leaves the runtime default.
void set_threads(int threads);

/// splitmix64 finalizer, used to derive independent per-candidate seeds.
std::uint64_t mix64(std::uint64_t x);

/// Uniform integer in [0, bound) from a 64-bit engine, by rejection.
template <class Engine>
std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = eng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace snorm
