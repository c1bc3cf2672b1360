#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wise/container.hpp"
#include "wise/image.hpp"
#include "wise/lzw.hpp"

namespace wise {

/// Result of empty-region cropping. Rows and columns whose samples are all
/// zero (across every channel) are removed; the rest keep their order.
struct CropResult {
  Image cropped;
  std::vector<std::uint32_t> removed_rows;
  std::vector<std::uint32_t> removed_cols;
  Shape original;
};

CropResult crop_empty(const Image& image);

/// Re-inserts zero rows and columns at the recorded positions. Throws
/// Error(Structural) when the lists do not fit `original` and `cropped`.
Image uncrop(const Image& cropped, std::span<const std::uint32_t> removed_rows,
             std::span<const std::uint32_t> removed_cols, const Shape& original);

inline Image uncrop(const CropResult& crop) {
  return uncrop(crop.cropped, crop.removed_rows, crop.removed_cols, crop.original);
}

struct AlphaStrip {
  Image image;
  bool dropped = false;
  std::optional<std::string> warning;
};

/// Drops the fourth channel of an RGBA image. With `enabled` false the image
/// passes through; with a non-RGBA input it passes through with a warning.
AlphaStrip strip_alpha(const Image& image, bool enabled);

struct CompressionConfig {
  std::uint32_t patch_size = 5000;
  bool drop_alpha = false;
  bool enable_projection = true;
  bool enable_bitplane = true;
  unsigned lzw_max_width = lzw::kDefaultMaxWidth;
  /// Worker count; 0 picks the hardware concurrency. Output never depends on it.
  unsigned threads = 0;

  std::uint8_t stage_mask() const noexcept;
};

/// Per-patch stage chain: projection, bit-plane transposition, LZW.
Bytes encode_patch(const Image& patch, std::uint8_t stage_mask, unsigned lzw_max_width);
Image decode_patch(std::span<const std::uint8_t> payload, const Shape& shape,
                   std::uint8_t stage_mask, unsigned lzw_max_width);

struct CompressResult {
  Bytes bytes;
  std::vector<std::string> warnings;
};

/// Crop, tile row-major into patch_size squares (edge tiles keep their true
/// size), encode every tile and assemble the container.
///
/// RGBA input is rejected with Error(UnsupportedLayout) unless drop_alpha is
/// set, since dropping alpha is the only lossy step.
CompressResult compress(const Image& image, const CompressionConfig& config);

struct DecompressResult {
  Image image;
  bool alpha_dropped = false;
};

/// Inverse of compress. Stage errors are rethrown with the patch origin
/// prepended.
DecompressResult decompress(std::span<const std::uint8_t> container_bytes, unsigned threads = 0);

}  // namespace wise
