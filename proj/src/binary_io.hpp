#ifndef RTPLAN_SRC_BINARY_IO_HPP
#define RTPLAN_SRC_BINARY_IO_HPP

// Little-endian byte buffer helpers shared by the artifact and roadmap
// formats. Internal to the library.

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "rtplan/error.hpp"
#include "rtplan/state.hpp"

namespace rtplan::detail {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* s, std::size_t n) { bytes_.insert(bytes_.end(), s, s + n); }
  void state(const DiscreteState& s) {
    for (std::int32_t c : s) i32(c);
  }

  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  std::vector<std::uint8_t>& bytes() noexcept { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string raw(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return s;
  }
  DiscreteState state(std::size_t dimension) {
    if (dimension > kMaxDimension) throw Error(ErrorCode::kParse, "corrupt dimension");
    DiscreteState s = DiscreteState::zeros(dimension);
    for (std::size_t k = 0; k < dimension; ++k) s[k] = i32();
    return s;
  }
  // Guards element counts read from the file against the remaining bytes.
  std::size_t count(std::size_t min_element_bytes) {
    const std::uint32_t n = u32();
    if (min_element_bytes > 0 && n > (size_ - pos_) / min_element_bytes) {
      throw Error(ErrorCode::kParse, "corrupt element count");
    }
    return n;
  }

  std::size_t position() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ == size_; }

 private:
  void need(std::size_t n) const {
    if (size_ - pos_ < n) throw Error(ErrorCode::kParse, "unexpected end of file");
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace rtplan::detail

#endif  // RTPLAN_SRC_BINARY_IO_HPP
