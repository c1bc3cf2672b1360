#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>

#include "wise/image.hpp"

namespace wise::io {

enum class Format {
  Auto,  // sniff P5/P6/P7 from the magic
  Pgm,   // P5, 1 channel
  Ppm,   // P6, 3 channels
  Pam,   // P7, 1/3/4 channels
  Raw,   // headerless interleaved bytes; needs explicit dimensions
};

std::optional<Format> parse_format(std::string_view name);
std::string_view format_name(Format f);

/// Picks a format from a file extension (.pgm/.ppm/.pam/.raw), else Auto.
Format format_from_extension(const std::filesystem::path& path);

/// Only 8-bit (maxval 255) rasters are accepted. Errors: MalformedHeader,
/// UnsupportedDepth, Truncated. `raw_shape` is required for Format::Raw.
Image read_image(std::span<const std::uint8_t> bytes, Format format,
                 const std::optional<Shape>& raw_shape = std::nullopt);

/// Throws Error(FormatMismatch) if the channel count does not fit the format
/// (PGM needs 1, PPM needs 3, PAM takes 1/3/4).
Bytes write_image(const Image& image, Format format);

Bytes read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames it into place, so a failed
/// write never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace wise::io
