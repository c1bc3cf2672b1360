#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "wise/image.hpp"

namespace wise {

/// Appends little-endian integers and LEB128 varints to a byte vector.
class ByteWriter {
 public:
  explicit ByteWriter(Bytes& out) : out_(out) {}

  void put_u8(std::uint8_t v) { out_.push_back(v); }
  void put_u16(std::uint16_t v) { put_le(v, 2); }
  void put_u32(std::uint32_t v) { put_le(v, 4); }
  void put_u64(std::uint64_t v) { put_le(v, 8); }
  void put_varint(std::uint64_t v);
  void put_bytes(std::span<const std::uint8_t> bytes);

 private:
  void put_le(std::uint64_t v, int n);
  Bytes& out_;
};

/// Bounds-checked reader over a byte span. Running past the end throws
/// Error(Truncated) mentioning `context`.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t get_u8(const char* context);
  std::uint16_t get_u16(const char* context) { return static_cast<std::uint16_t>(get_le(2, context)); }
  std::uint32_t get_u32(const char* context) { return static_cast<std::uint32_t>(get_le(4, context)); }
  std::uint64_t get_u64(const char* context) { return get_le(8, context); }
  std::uint64_t get_varint(const char* context);
  std::span<const std::uint8_t> get_bytes(std::size_t n, const std::string& context);

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  std::uint64_t get_le(int n, const char* context);
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace wise
