#include "wise/bitplane.hpp"

#include <bit>
#include <numeric>
#include <string>

#include "wise/error.hpp"

namespace wise {

Bytes to_bitplanes(const ResidualPatch& residuals) {
  const Shape& shape = residuals.shape();
  const std::size_t pixels = shape.pixels();
  const std::size_t chans = shape.channels;
  const std::size_t pb = plane_bytes(pixels);
  const auto src = residuals.samples();

  Bytes out(bitplane_stream_size(shape), 0);
  for (std::size_t c = 0; c < chans; ++c) {
    std::uint8_t* channel_out = out.data() + c * 8 * pb;
    for (std::size_t p = 0; p < pixels; ++p) {
      const std::uint8_t v = src[p * chans + c];
      if (v == 0) continue;
      const std::size_t byte = p >> 3;
      const auto mask = static_cast<std::uint8_t>(0x80u >> (p & 7));
      for (int k = 0; k < 8; ++k)
        if (v & (1u << k)) channel_out[(7 - k) * pb + byte] |= mask;
    }
  }
  return out;
}

ResidualPatch from_bitplanes(std::span<const std::uint8_t> stream, const Shape& shape) {
  const std::size_t expected = bitplane_stream_size(shape);
  if (stream.size() != expected)
    throw Error(ErrorKind::Structural, "bit-plane stream has " + std::to_string(stream.size()) +
                                           " bytes, expected " + std::to_string(expected));
  const std::size_t pixels = shape.pixels();
  const std::size_t chans = shape.channels;
  const std::size_t pb = plane_bytes(pixels);

  Bytes out(shape.samples(), 0);
  for (std::size_t c = 0; c < chans; ++c) {
    const std::uint8_t* channel_in = stream.data() + c * 8 * pb;
    for (int k = 0; k < 8; ++k) {
      const std::uint8_t* plane = channel_in + (7 - k) * pb;
      const auto bit = static_cast<std::uint8_t>(1u << k);
      for (std::size_t p = 0; p < pixels; ++p)
        if (plane[p >> 3] & (0x80u >> (p & 7))) out[p * chans + c] |= bit;
    }
  }
  return ResidualPatch(shape, std::move(out));
}

std::size_t EffectiveBitHistogram::total() const noexcept {
  return std::accumulate(by_position.begin(), by_position.end(), zero);
}

EffectiveBitHistogram effective_bit_histogram(std::span<const std::uint8_t> bytes) {
  EffectiveBitHistogram h;
  for (std::uint8_t b : bytes) {
    if (b == 0)
      ++h.zero;
    else
      ++h.by_position[std::bit_width(static_cast<unsigned>(b)) - 1];
  }
  return h;
}

}  // namespace wise
