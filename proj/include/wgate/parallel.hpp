#ifndef WGATE_PARALLEL_HPP
#define WGATE_PARALLEL_HPP

#include <atomic>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wgate::parallel {

// Runtime switch for the OpenMP kernels. The serial reference paths ignore
// it; tests flip it to compare both executions of the same kernel.
inline std::atomic<bool>& enabled_flag() {
  static std::atomic<bool> flag{true};
  return flag;
}

inline bool enabled() { return enabled_flag().load(std::memory_order_relaxed); }
inline void set_enabled(bool on) { enabled_flag().store(on, std::memory_order_relaxed); }

// Element-wise parallel map. Every index is independent, so the result is
// bit-identical to the serial loop regardless of thread count.
template <typename Fn>
void parallel_for(std::ptrdiff_t n, const Fn& body) {
#ifdef _OPENMP
  if (enabled()) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

} // namespace wgate::parallel

#endif
