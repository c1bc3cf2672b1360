#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "wise/image.hpp"

namespace wise {

/// Bytes per packed plane for a patch of `pixels` pixels.
constexpr std::size_t plane_bytes(std::size_t pixels) noexcept { return (pixels + 7) / 8; }

/// Size of the transposed stream for a given shape.
constexpr std::size_t bitplane_stream_size(const Shape& s) noexcept {
  return s.channels * 8 * plane_bytes(s.pixels());
}

/// Bit-plane transposition of a whole patch.
///
/// Layout: channel 0's eight planes, then channel 1's, and so on. Within a
/// channel the planes run from bit 7 down to bit 0. Plane k carries bit k of
/// every sample of that channel in row-major pixel order, eight pixels per
/// byte with the earliest pixel in the most significant bit. Pad bits of the
/// last byte are zero.
Bytes to_bitplanes(const ResidualPatch& residuals);

/// Inverse of to_bitplanes. Throws Error(Structural) when `stream` is not
/// exactly bitplane_stream_size(shape) bytes.
ResidualPatch from_bitplanes(std::span<const std::uint8_t> stream, const Shape& shape);

/// Highest-set-bit census. `by_position[k]` counts bytes whose top set bit is
/// k; `zero` counts zero bytes.
struct EffectiveBitHistogram {
  std::array<std::size_t, 8> by_position{};
  std::size_t zero = 0;

  std::size_t total() const noexcept;
};

EffectiveBitHistogram effective_bit_histogram(std::span<const std::uint8_t> bytes);

inline EffectiveBitHistogram effective_bit_histogram(const ResidualPatch& residuals) {
  return effective_bit_histogram(residuals.samples());
}

}  // namespace wise
