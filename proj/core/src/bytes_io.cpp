#include "wise/bytes_io.hpp"

#include "wise/error.hpp"

namespace wise {

void ByteWriter::put_le(std::uint64_t v, int n) {
  for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::put_varint(std::uint64_t v) {
  while (v >= 0x80) {
    out_.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::put_bytes(std::span<const std::uint8_t> bytes) {
  out_.insert(out_.end(), bytes.begin(), bytes.end());
}

std::uint8_t ByteReader::get_u8(const char* context) {
  return static_cast<std::uint8_t>(get_le(1, context));
}

std::uint64_t ByteReader::get_le(int n, const char* context) {
  if (remaining() < static_cast<std::size_t>(n))
    throw Error(ErrorKind::Truncated, std::string("stream truncated while reading ") + context);
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
  pos_ += n;
  return v;
}

std::uint64_t ByteReader::get_varint(const char* context) {
  std::uint64_t v = 0;
  for (int shift = 0;; shift += 7) {
    if (shift > 63) throw Error(ErrorKind::Structural, std::string("varint overflow in ") + context);
    const std::uint8_t b = get_u8(context);
    v |= std::uint64_t{b & 0x7Fu} << shift;
    if ((b & 0x80) == 0) return v;
  }
}

std::span<const std::uint8_t> ByteReader::get_bytes(std::size_t n, const std::string& context) {
  if (remaining() < n)
    throw Error(ErrorKind::Truncated, "stream truncated in " + context);
  auto out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

}  // namespace wise
