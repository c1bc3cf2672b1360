#pragma once

#include <cstdint>

#include "wise/image.hpp"

namespace wise {

/// Interleaves signed bytes onto unsigned codes: 0->0, -1->1, 1->2, -2->3,
/// ..., -128->255. Small magnitudes keep their high bits clear.
constexpr std::uint8_t zigzag(std::int8_t s) noexcept {
  const auto u = static_cast<std::uint8_t>(s);
  return static_cast<std::uint8_t>((u << 1) ^ (s < 0 ? 0xFF : 0x00));
}

constexpr std::int8_t unzigzag(std::uint8_t z) noexcept {
  return static_cast<std::int8_t>((z >> 1) ^ -(z & 1));
}

/// Hierarchical projection coding. Three sequential first-order difference
/// passes, all modulo 256:
///   row:     d[m][n][c]  = x[m][n][c] - x[m-1][n][c]      (m >= 1)
///   column:  e[m][n][c]  = d[m][n][c] - d[m][n-1][c]      (n >= 1)
///   channel: y[m][n][c]  = e[m][n][c] - e[m][n][0]        (c = 1, 2; RGB only)
/// Each pass reads the previous pass's output, never values it has already
/// rewritten. Residuals are stored zigzag-mapped.
///
/// Throws Error(UnsupportedLayout) unless channels is 1 or 3.
ResidualPatch project(const Image& patch);

/// Exact inverse of project(): undo channel, column, then row differences by
/// modular prefix sums.
Image unproject(const ResidualPatch& residuals);

}  // namespace wise
