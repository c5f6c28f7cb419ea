#ifndef RTPLAN_STATE_HPP
#define RTPLAN_STATE_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rtplan {

inline constexpr std::size_t kMaxDimension = 8;

// A lattice vertex: a short vector of signed cell indices. Storage is inline
// so states can be hashed, copied and compared without allocation. Unused
// slots are always zero, which makes the defaulted comparisons correct.
//
// The defaulted ordering is lexicographic over coordinates; it doubles as the
// tie-break order between states with equal heuristic values.
class DiscreteState {
 public:
  DiscreteState() = default;
  DiscreteState(std::initializer_list<std::int32_t> coords);
  explicit DiscreteState(std::span<const std::int32_t> coords);

  static DiscreteState zeros(std::size_t dimension);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  std::int32_t operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::int32_t& operator[](std::size_t i) noexcept { return coords_[i]; }

  std::span<const std::int32_t> coords() const noexcept {
    return {coords_.data(), size_};
  }
  const std::int32_t* begin() const noexcept { return coords_.data(); }
  const std::int32_t* end() const noexcept { return coords_.data() + size_; }

  DiscreteState operator+(const DiscreteState& offset) const;
  DiscreteState operator-(const DiscreteState& offset) const;

  friend bool operator==(const DiscreteState&, const DiscreteState&) = default;
  friend auto operator<=>(const DiscreteState&, const DiscreteState&) = default;

  std::string to_string() const;

 private:
  std::array<std::int32_t, kMaxDimension> coords_{};
  std::uint8_t size_ = 0;
};

// Motion primitives are coordinate offsets applied to a state.
using MotionPrimitive = DiscreteState;

std::ostream& operator<<(std::ostream& os, const DiscreteState& s);

// Parses "x,y,z" (commas and/or whitespace).
DiscreteState parse_state(const std::string& text);

struct DiscreteStateHash {
  std::size_t operator()(const DiscreteState& s) const noexcept;
};

}  // namespace rtplan

#endif  // RTPLAN_STATE_HPP
