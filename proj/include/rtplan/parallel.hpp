#ifndef RTPLAN_PARALLEL_HPP
#define RTPLAN_PARALLEL_HPP

namespace rtplan {

// Selects between the OpenMP kernel and its serial reference. Both produce
// identical results (timings aside); the serial path is kept for testing
// and for the kernel benchmark.
enum class Exec {
  kSerial,
  kParallel,
};

int max_threads() noexcept;

}  // namespace rtplan

#endif  // RTPLAN_PARALLEL_HPP
