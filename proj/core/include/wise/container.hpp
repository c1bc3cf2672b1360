#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wise/image.hpp"

namespace wise {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'W', 'I', 'S', 'E'};
inline constexpr std::uint16_t kFormatVersion = 1;

/// Header flag bits. Bits 8..15 carry the LZW maximum code width so the
/// decoder can rebuild the width schedule.
inline constexpr std::uint16_t kFlagAlphaDropped = 0x0001;
inline constexpr unsigned kFlagLzwWidthShift = 8;

/// Per-patch stage mask bits.
enum StageBits : std::uint8_t {
  kStageProjection = 0x01,
  kStageBitplane = 0x02,
  kStageLzw = 0x04,
};

struct ContainerHeader {
  std::uint16_t version = kFormatVersion;
  std::uint16_t flags = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t channels = 0;
  std::uint8_t bit_depth = 8;
  std::uint32_t patch_size = 0;

  bool alpha_dropped() const noexcept { return (flags & kFlagAlphaDropped) != 0; }
  unsigned lzw_max_width() const noexcept { return flags >> kFlagLzwWidthShift; }

  friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

/// Rows and columns removed by empty-region cropping, both strictly increasing.
struct CropMeta {
  std::vector<std::uint32_t> removed_rows;
  std::vector<std::uint32_t> removed_cols;

  friend bool operator==(const CropMeta&, const CropMeta&) = default;
};

struct PatchRecord {
  std::uint32_t origin_row = 0;
  std::uint32_t origin_col = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint64_t uncompressed_length = 0;
  std::uint64_t compressed_length = 0;
  std::uint8_t stage_mask = 0;

  friend bool operator==(const PatchRecord&, const PatchRecord&) = default;
};

struct Container {
  ContainerHeader header;
  CropMeta crop;
  std::vector<PatchRecord> patches;
  std::vector<Bytes> payloads;

  /// Dimensions of the image after cropping.
  std::uint32_t cropped_height() const;
  std::uint32_t cropped_width() const;

  friend bool operator==(const Container&, const Container&) = default;
};

/// Checks every structural invariant of the container (tiling, sorted crop
/// lists, payload lengths). Throws Error on the first violation.
void validate(const Container& container);

/// Serializes to the little-endian on-disk layout. Deterministic.
Bytes container_write(const Container& container);

/// Parses and validates. Errors: BadMagic, UnsupportedVersion, Truncated
/// (naming the patch whose payload is cut short), Structural.
Container container_read(std::span<const std::uint8_t> bytes);

}  // namespace wise
