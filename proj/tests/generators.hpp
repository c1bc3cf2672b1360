// Seeded input generators shared by the unit and acceptance suites.
#pragma once

#include <cstdint>
#include <random>

#include "wise/image.hpp"

namespace testgen {

enum class Content { Constant, Gradient, Uniform, Sparse };

inline wise::Bytes random_bytes(std::mt19937_64& rng, std::size_t n, unsigned alphabet = 256) {
  wise::Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng() % alphabet);
  return out;
}

/// Image of the requested content kind. Sparse images carry all-zero rows
/// and columns so cropping has work to do.
inline wise::Image make_image(std::mt19937_64& rng, std::size_t h, std::size_t w, std::size_t c, Content kind) {
  wise::Image img(wise::Shape{h, w, c});
  const auto base = static_cast<int>(rng() % 256);
  const int dy = static_cast<int>(rng() % 7) - 3;
  const int dx = static_cast<int>(rng() % 7) - 3;
  for (std::size_t m = 0; m < h; ++m)
    for (std::size_t n = 0; n < w; ++n)
      for (std::size_t ch = 0; ch < c; ++ch) {
        int v = 0;
        switch (kind) {
          case Content::Constant: v = base; break;
          case Content::Gradient: v = base + dy * static_cast<int>(m) + dx * static_cast<int>(n) + 17 * static_cast<int>(ch); break;
          case Content::Uniform: v = static_cast<int>(rng() % 256); break;
          case Content::Sparse: v = rng() % 4 == 0 ? static_cast<int>(rng() % 256) : 0; break;
        }
        img.at(m, n, ch) = static_cast<std::uint8_t>(v & 0xFF);
      }
  if (kind == Content::Sparse) {
    for (std::size_t m = 0; m < h; ++m)
      if (rng() % 3 == 0)
        for (std::size_t n = 0; n < w; ++n)
          for (std::size_t ch = 0; ch < c; ++ch) img.at(m, n, ch) = 0;
    for (std::size_t n = 0; n < w; ++n)
      if (rng() % 3 == 0)
        for (std::size_t m = 0; m < h; ++m)
          for (std::size_t ch = 0; ch < c; ++ch) img.at(m, n, ch) = 0;
  }
  return img;
}

inline std::size_t random_extent(std::mt19937_64& rng, std::size_t max) {
  // Bias towards small and degenerate sizes: 1, a handful, or anything.
  switch (rng() % 4) {
    case 0: return 1;
    case 1: return 1 + rng() % 8;
    default: return 1 + rng() % max;
  }
}

}  // namespace testgen
