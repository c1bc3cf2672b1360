#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wise/image.hpp"
#include "wise/pipeline.hpp"

namespace wise::metrics {

/// Empirical Shannon entropy in bits per symbol, summed in ascending symbol
/// order. Throws Error(UndefinedEntropy) on empty input.
double shannon_entropy(std::span<const std::uint8_t> bytes);
double shannon_entropy(std::span<const std::uint32_t> symbols);

struct StageEntropy {
  std::string stage;  // "raw", "projection", "bitplane", "dictionary"
  double entropy_bits = 0.0;
};

/// Entropy after each enabled stage of the patch chain. The dictionary stage
/// is measured over the LZW code sequence, one symbol per code.
std::vector<StageEntropy> entropy_trace(const Image& patch, const CompressionConfig& config);

/// original / compressed. Throws Error(Structural) when compressed is 0.
double compression_ratio(std::uint64_t original_len, std::uint64_t compressed_len);

inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

/// PSNR between two unpacked binary planes (one 0/1 value per pixel) with
/// peak 1. Identical planes give kInfinitePsnr.
double bitplane_psnr(std::span<const std::uint8_t> plane_a, std::span<const std::uint8_t> plane_b);

/// Bit `bit` of channel `channel` for every pixel, one 0/1 byte per pixel.
Bytes unpack_plane(std::span<const std::uint8_t> samples, std::size_t channels, std::size_t channel, int bit);

enum class PsnrStage { Raw, Projected };

/// Square matrix over the 8 x channels planes, ordered like the bit-plane
/// stream (channel-major, bit 7 first).
using PsnrMatrix = std::vector<std::vector<double>>;

PsnrMatrix psnr_matrix(const Image& patch, PsnrStage stage);

/// Mean over i != j. Infinite entries propagate.
double mean_off_diagonal(const PsnrMatrix& m);

}  // namespace wise::metrics
