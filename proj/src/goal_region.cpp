#include "rtplan/goal_region.hpp"

#include "rtplan/error.hpp"

namespace rtplan {

bool Box::contains(const DiscreteState& s) const noexcept {
  if (s.size() != lower.size()) return false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < lower[k] || s[k] > upper[k]) return false;
  }
  return true;
}

std::size_t Box::volume() const noexcept {
  if (lower.empty()) return 0;
  std::size_t v = 1;
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (upper[k] < lower[k]) return 0;
    v *= static_cast<std::size_t>(static_cast<std::int64_t>(upper[k]) - lower[k] + 1);
  }
  return v;
}

GoalRegion::GoalRegion(std::vector<Box> boxes, std::size_t enumeration_budget)
    : boxes_(std::move(boxes)) {
  if (boxes_.empty()) throw Error(ErrorCode::kInvalidArgument, "goal region needs at least one box");
  const std::size_t n = boxes_.front().lower.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "goal box has zero dimension");
  bounds_ = boxes_.front();
  for (const Box& b : boxes_) {
    if (b.lower.size() != n || b.upper.size() != n) {
      throw Error(ErrorCode::kInconsistentDims, "goal boxes disagree on dimension");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (b.lower[k] > b.upper[k]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "goal box lower bound exceeds upper bound on axis " + std::to_string(k));
      }
      bounds_.lower[k] = std::min(bounds_.lower[k], b.lower[k]);
      bounds_.upper[k] = std::max(bounds_.upper[k], b.upper[k]);
    }
  }
  strides_.assign(n, 1);
  std::size_t volume = 1;
  for (std::size_t k = n; k-- > 0;) {
    strides_[k] = volume;
    const auto extent =
        static_cast<std::size_t>(static_cast<std::int64_t>(bounds_.upper[k]) - bounds_.lower[k] + 1);
    if (extent > enumeration_budget / volume) {
      throw Error(ErrorCode::kInvalidArgument, "goal region exceeds the enumeration budget");
    }
    volume *= extent;
  }
  index_space_ = volume;
  for_each([this](const DiscreteState&) { ++size_; });
}

bool GoalRegion::contains(const DiscreteState& s) const noexcept {
  for (const Box& b : boxes_) {
    if (b.contains(s)) return true;
  }
  return false;
}

std::size_t GoalRegion::index(const DiscreteState& s) const noexcept {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < strides_.size(); ++k) {
    idx += static_cast<std::size_t>(s[k] - bounds_.lower[k]) * strides_[k];
  }
  return idx;
}

DiscreteState GoalRegion::state_at(std::size_t index) const {
  DiscreteState s = bounds_.lower;
  for (std::size_t k = 0; k < strides_.size(); ++k) {
    s[k] += static_cast<std::int32_t>(index / strides_[k]);
    index %= strides_[k];
  }
  return s;
}

std::vector<DiscreteState> GoalRegion::states() const {
  std::vector<DiscreteState> out;
  out.reserve(size_);
  for_each([&](const DiscreteState& s) { out.push_back(s); });
  return out;
}

}  // namespace rtplan
