#pragma once

#include <cstdint>
#include <vector>

#include "wise/image.hpp"

namespace wise::synthetic {

/// Seeded generator of WSI-like RGB content: low-frequency stain gradients,
/// dark nuclei, high-frequency stain texture shared across channels, and
/// optional all-zero margins. The output is a pure function of (shape, seed)
/// on every platform.
Image wsi_patch(std::size_t height, std::size_t width, std::uint64_t seed);

/// Smooth linear-plus-sinusoidal gradient with +-1 level jitter.
Image smooth_gradient(std::size_t height, std::size_t width, std::size_t channels, std::uint64_t seed);

/// `count` wsi_patch images with per-image seeds derived from `seed`.
std::vector<Image> wsi_corpus(std::size_t count, std::size_t height, std::size_t width, std::uint64_t seed);

/// Fixed 8x8 RGB fragment of stained tissue used for stage-wise entropy
/// demonstrations.
Image sample_matrix();

}  // namespace wise::synthetic
