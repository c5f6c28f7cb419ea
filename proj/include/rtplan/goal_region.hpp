#ifndef RTPLAN_GOAL_REGION_HPP
#define RTPLAN_GOAL_REGION_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rtplan/state.hpp"

namespace rtplan {

// Inclusive axis-aligned box in lattice coordinates.
struct Box {
  DiscreteState lower;
  DiscreteState upper;

  bool contains(const DiscreteState& s) const noexcept;
  std::size_t volume() const noexcept;

  friend bool operator==(const Box&, const Box&) = default;
};

// Calls f(state) for every lattice state in [lower, upper], axis 0 slowest.
template <class F>
void for_each_in_box(const DiscreteState& lower, const DiscreteState& upper, F&& f) {
  const std::size_t n = lower.size();
  if (n == 0) return;
  for (std::size_t k = 0; k < n; ++k) {
    if (lower[k] > upper[k]) return;
  }
  DiscreteState s = lower;
  while (true) {
    f(s);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (s[k] < upper[k]) {
        ++s[k];
        break;
      }
      s[k] = lower[k];
      if (k == 0) return;
    }
  }
}

// The goal region G_S: a union of boxes (normally exactly one). States are
// densely indexed over the bounding box so per-state bookkeeping can live in
// flat arrays; index order is lexicographic order.
class GoalRegion {
 public:
  static constexpr std::size_t kDefaultEnumerationBudget = std::size_t{1} << 24;

  GoalRegion() = default;
  explicit GoalRegion(std::vector<Box> boxes,
                      std::size_t enumeration_budget = kDefaultEnumerationBudget);

  std::size_t dimension() const noexcept { return bounds_.lower.size(); }
  const std::vector<Box>& boxes() const noexcept { return boxes_; }
  const Box& bounds() const noexcept { return bounds_; }

  bool contains(const DiscreteState& s) const noexcept;
  bool in_bounds(const DiscreteState& s) const noexcept { return bounds_.contains(s); }

  // Size of the dense index space (bounding-box volume).
  std::size_t index_space() const noexcept { return index_space_; }
  // Requires in_bounds(s).
  std::size_t index(const DiscreteState& s) const noexcept;
  DiscreteState state_at(std::size_t index) const;

  // Number of member states |G_S|.
  std::size_t size() const noexcept { return size_; }

  template <class F>
  void for_each(F&& f) const {
    for_each_in_box(bounds_.lower, bounds_.upper, [&](const DiscreteState& s) {
      if (contains(s)) f(s);
    });
  }
  std::vector<DiscreteState> states() const;

  friend bool operator==(const GoalRegion& a, const GoalRegion& b) {
    return a.boxes_ == b.boxes_;
  }

 private:
  std::vector<Box> boxes_;
  Box bounds_;
  std::vector<std::size_t> strides_;
  std::size_t index_space_ = 0;
  std::size_t size_ = 0;
};

}  // namespace rtplan

#endif  // RTPLAN_GOAL_REGION_HPP
