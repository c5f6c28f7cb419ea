#ifndef RTPLAN_RANDOM_HPP
#define RTPLAN_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>

#include "rtplan/goal_region.hpp"

namespace rtplan {

// Seeded generator with platform-independent derived draws (the standard
// distributions are implementation-defined, which would break reproducible
// artifacts across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  std::size_t uniform(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform_real(double lo, double hi) { return lo + (hi - lo) * unit(); }
  DiscreteState uniform_in(const Box& box) {
    DiscreteState s = box.lower;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto span = static_cast<std::size_t>(static_cast<std::int64_t>(box.upper[k]) - box.lower[k] + 1);
      s[k] = box.lower[k] + static_cast<std::int32_t>(uniform(span));
    }
    return s;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rtplan

#endif  // RTPLAN_RANDOM_HPP
