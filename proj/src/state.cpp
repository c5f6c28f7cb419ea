#include "rtplan/state.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>
#include <sstream>

#include "rtplan/error.hpp"

namespace rtplan {

DiscreteState::DiscreteState(std::initializer_list<std::int32_t> coords)
    : DiscreteState(std::span<const std::int32_t>(coords.begin(), coords.size())) {}

DiscreteState::DiscreteState(std::span<const std::int32_t> coords) {
  if (coords.size() > kMaxDimension) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state dimension " + std::to_string(coords.size()) + " exceeds maximum " +
                    std::to_string(kMaxDimension));
  }
  std::copy(coords.begin(), coords.end(), coords_.begin());
  size_ = static_cast<std::uint8_t>(coords.size());
}

DiscreteState DiscreteState::zeros(std::size_t dimension) {
  std::vector<std::int32_t> c(dimension, 0);
  return DiscreteState(std::span<const std::int32_t>(c));
}

DiscreteState DiscreteState::operator+(const DiscreteState& offset) const {
  DiscreteState out = *this;
  for (std::size_t k = 0; k < size_; ++k) out.coords_[k] += offset.coords_[k];
  return out;
}

DiscreteState DiscreteState::operator-(const DiscreteState& offset) const {
  DiscreteState out = *this;
  for (std::size_t k = 0; k < size_; ++k) out.coords_[k] -= offset.coords_[k];
  return out;
}

std::string DiscreteState::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < size_; ++k) {
    if (k) out += ",";
    out += std::to_string(coords_[k]);
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const DiscreteState& s) {
  return os << s.to_string();
}

DiscreteState parse_state(const std::string& text) {
  std::vector<std::int32_t> coords;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') {
      ++i;
      continue;
    }
    std::int32_t v = 0;
    const char* first = text.data() + i;
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) {
      throw Error(ErrorCode::kParse, "cannot parse state coordinates from '" + text + "'");
    }
    coords.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  if (coords.empty()) throw Error(ErrorCode::kParse, "empty state '" + text + "'");
  return DiscreteState(std::span<const std::int32_t>(coords));
}

std::size_t DiscreteStateHash::operator()(const DiscreteState& s) const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ s.size();
  for (std::int32_t c : s) {
    h ^= static_cast<std::uint32_t>(c);
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace rtplan
