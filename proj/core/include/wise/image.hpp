#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wise {

using Bytes = std::vector<std::uint8_t>;

/// Dimensions of an interleaved 8-bit raster.
struct Shape {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;

  constexpr std::size_t pixels() const noexcept { return height * width; }
  constexpr std::size_t samples() const noexcept { return height * width * channels; }

  friend bool operator==(const Shape&, const Shape&) = default;
};

namespace detail {

// Shared storage for the two raster kinds; the tag keeps them from mixing.
template <class Tag>
class Raster {
 public:
  Raster() = default;
  explicit Raster(Shape shape);
  Raster(Shape shape, Bytes samples);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t height() const noexcept { return shape_.height; }
  std::size_t width() const noexcept { return shape_.width; }
  std::size_t channels() const noexcept { return shape_.channels; }
  bool empty() const noexcept { return shape_.samples() == 0; }

  std::span<const std::uint8_t> samples() const noexcept { return samples_; }
  std::span<std::uint8_t> samples() noexcept { return samples_; }
  Bytes release() && { return std::move(samples_); }

  std::size_t index(std::size_t row, std::size_t col, std::size_t ch) const noexcept {
    return (row * shape_.width + col) * shape_.channels + ch;
  }
  std::uint8_t at(std::size_t row, std::size_t col, std::size_t ch) const noexcept {
    return samples_[index(row, col, ch)];
  }
  std::uint8_t& at(std::size_t row, std::size_t col, std::size_t ch) noexcept {
    return samples_[index(row, col, ch)];
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  Shape shape_;
  Bytes samples_;
};

struct ImageTag;
struct ResidualTag;

}  // namespace detail

/// Height x width x channels block of 8-bit samples, row-major and
/// channel-interleaved. Zero-sized images are allowed (a fully cropped slide).
using Image = detail::Raster<detail::ImageTag>;

/// Same layout as Image, holding zigzag-mapped modular residuals.
using ResidualPatch = detail::Raster<detail::ResidualTag>;

extern template class detail::Raster<detail::ImageTag>;
extern template class detail::Raster<detail::ResidualTag>;

}  // namespace wise
