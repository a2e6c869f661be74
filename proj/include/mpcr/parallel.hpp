#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mpcr {

struct Execution {
  bool parallel = true;
  int threads = 0;  // 0 = OpenMP default
};

inline int available_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel::seq {

// Reference loop: replicate i runs after replicate i-1 on the calling thread.
template <typename Fn>
void for_each_replicate(std::size_t count, Fn&& fn) {
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

}  // namespace parallel::seq

namespace parallel::omp {

// fn(i) must only write to slot i of its output; every replicate owns its
// own RNG stream, so results do not depend on scheduling.
template <typename Fn>
void for_each_replicate(std::size_t count, int threads, Fn&& fn) {
#ifdef _OPENMP
  std::exception_ptr failure;
  std::mutex failure_lock;
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4) num_threads(team)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> guard(failure_lock);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
#else
  (void)threads;
  parallel::seq::for_each_replicate(count, fn);
#endif
}

}  // namespace parallel::omp

template <typename Fn>
void for_each_replicate(std::size_t count, const Execution& exec, Fn&& fn) {
  if (exec.parallel) {
    parallel::omp::for_each_replicate(count, exec.threads, fn);
  } else {
    parallel::seq::for_each_replicate(count, fn);
  }
}

}  // namespace mpcr
