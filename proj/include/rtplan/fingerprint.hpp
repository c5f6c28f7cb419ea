#ifndef RTPLAN_FINGERPRINT_HPP
#define RTPLAN_FINGERPRINT_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace rtplan {

// 64-bit FNV-1a over a canonical little-endian byte stream. Used for domain
// fingerprints and artifact checksums.
class Fnv1a {
 public:
  static constexpr std::uint64_t kOffset = 14695981039346656037ull;
  static constexpr std::uint64_t kPrime = 1099511628211ull;

  void add_bytes(std::span<const std::uint8_t> bytes) noexcept {
    for (std::uint8_t b : bytes) {
      hash_ ^= b;
      hash_ *= kPrime;
    }
  }
  void add_u64(std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) add_byte(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void add_i64(std::int64_t v) noexcept { add_u64(static_cast<std::uint64_t>(v)); }
  void add_double(double v) noexcept { add_u64(std::bit_cast<std::uint64_t>(v)); }
  void add_string(std::string_view s) noexcept {
    add_u64(s.size());
    for (char c : s) add_byte(static_cast<std::uint8_t>(c));
  }

  std::uint64_t value() const noexcept { return hash_; }

 private:
  void add_byte(std::uint8_t b) noexcept {
    hash_ ^= b;
    hash_ *= kPrime;
  }
  std::uint64_t hash_ = kOffset;
};

}  // namespace rtplan

#endif  // RTPLAN_FINGERPRINT_HPP
