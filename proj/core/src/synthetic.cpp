#include "wise/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace wise::synthetic {

namespace {

// std distributions are implementation-defined; map raw mt19937_64 output by
// hand so generated corpora are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint8_t clamp_sample(double v, int lo = 0) {
  return static_cast<std::uint8_t>(std::clamp(static_cast<int>(std::lround(v)), lo, 255));
}

struct Wave {
  double amplitude, fy, fx, phase;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

Image wsi_patch(std::size_t height, std::size_t width, std::uint64_t seed) {
  Rng rng(seed);

  // Eosin-pink background stain and haematoxylin-purple nuclei, in RGB.
  const std::array<double, 3> stroma = {rng.uniform(200, 235), rng.uniform(140, 180), rng.uniform(180, 215)};
  const std::array<double, 3> nucleus = {rng.uniform(70, 110), rng.uniform(40, 80), rng.uniform(120, 160)};
  const std::array<double, 3> stain_weight = {0.9, 1.0, 0.8};

  std::array<Wave, 3> waves{};
  for (auto& w : waves)
    w = {rng.uniform(4, 12), rng.uniform(0.2, 1.5), rng.uniform(0.2, 1.5), rng.uniform(0, 2 * std::numbers::pi)};

  struct Blob {
    double row, col, radius;
  };
  std::vector<Blob> blobs(static_cast<std::size_t>(height * width / 1500.0 * rng.uniform(0.5, 1.5)));
  for (auto& b : blobs) b = {rng.uniform(0, height), rng.uniform(0, width), rng.uniform(2.5, 6.0)};

  const double texture_sigma = rng.uniform(2.0, 4.0);
  const double channel_sigma = 0.3;

  // Nuclear density map; blobs are sparse so splat them locally.
  std::vector<double> density(height * width, 0.0);
  for (const Blob& b : blobs) {
    const auto r0 = static_cast<std::ptrdiff_t>(b.row - 2 * b.radius);
    const auto c0 = static_cast<std::ptrdiff_t>(b.col - 2 * b.radius);
    const auto extent = static_cast<std::ptrdiff_t>(4 * b.radius) + 1;
    for (std::ptrdiff_t m = std::max<std::ptrdiff_t>(r0, 0); m < std::min<std::ptrdiff_t>(r0 + extent, height); ++m)
      for (std::ptrdiff_t n = std::max<std::ptrdiff_t>(c0, 0); n < std::min<std::ptrdiff_t>(c0 + extent, width); ++n) {
        const double dy = (m - b.row) / b.radius;
        const double dx = (n - b.col) / b.radius;
        double& d = density[m * width + n];
        d = std::max(d, std::exp(-(dx * dx + dy * dy) * 1.5));
      }
  }

  // Optics blur the stain texture over a few pixels: box-filtered white
  // noise, renormalised to unit variance.
  std::vector<double> field(height * width);
  for (auto& v : field) v = rng.gaussian();
  const std::ptrdiff_t radius = 2;
  auto blur = [&](bool along_rows) {
    std::vector<double> out(field.size());
    const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(height), w = static_cast<std::ptrdiff_t>(width);
    for (std::ptrdiff_t m = 0; m < h; ++m)
      for (std::ptrdiff_t n = 0; n < w; ++n) {
        double sum = 0.0;
        for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
          const std::ptrdiff_t mm = along_rows ? std::clamp<std::ptrdiff_t>(m + k, 0, h - 1) : m;
          const std::ptrdiff_t nn = along_rows ? n : std::clamp<std::ptrdiff_t>(n + k, 0, w - 1);
          sum += field[mm * w + nn];
        }
        out[m * w + n] = sum;
      }
    field = std::move(out);
  };
  blur(true);
  blur(false);
  {
    double sq = 0.0;
    for (double v : field) sq += v * v;
    const double scale = field.empty() || sq == 0.0 ? 1.0 : 1.0 / std::sqrt(sq / field.size());
    for (auto& v : field) v *= scale;
  }

  // Tissue boundary: a low-frequency level set; outside it the glass slide
  // saturates to white.
  std::array<Wave, 2> shore{};
  for (auto& w : shore)
    w = {1.0, rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2), rng.uniform(0, 2 * std::numbers::pi)};
  const double tissue_level = rng.uniform(-1.5, 0.0);

  Image img(Shape{height, width, 3});
  for (std::size_t m = 0; m < height; ++m) {
    for (std::size_t n = 0; n < width; ++n) {
      double shore_v = 0.0;
      for (const Wave& w : shore)
        shore_v += std::sin(2 * std::numbers::pi * (w.fy * m / height + w.fx * n / width) + w.phase);
      if (shore_v < tissue_level) {
        for (std::size_t c = 0; c < 3; ++c) img.at(m, n, c) = 255;
        continue;
      }
      double low = 0.0;
      for (const Wave& w : waves)
        low += w.amplitude *
               std::sin(2 * std::numbers::pi * (w.fy * m / height + w.fx * n / width) + w.phase);
      const double texture = texture_sigma * field[m * width + n];
      const double d = density[m * width + n];
      for (std::size_t c = 0; c < 3; ++c) {
        const double base = stroma[c] * (1 - d) + nucleus[c] * d;
        const double v = base + stain_weight[c] * (low + texture) + channel_sigma * rng.gaussian();
        img.at(m, n, c) = clamp_sample(v, 1);
      }
    }
  }

  // Slide background outside the tissue reads as zero.
  if (rng.uniform() < 0.5) {
    const std::size_t top = rng.below(height / 8 + 1);
    const std::size_t left = rng.below(width / 8 + 1);
    const std::size_t right = rng.below(width / 8 + 1);
    for (std::size_t m = 0; m < height; ++m)
      for (std::size_t n = 0; n < width; ++n)
        if (m < top || n < left || n + right >= width)
          for (std::size_t c = 0; c < 3; ++c) img.at(m, n, c) = 0;
  }
  return img;
}

Image smooth_gradient(std::size_t height, std::size_t width, std::size_t channels, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::array<double, 4>> params(channels);
  for (auto& p : params)
    p = {rng.uniform(60, 190), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(5, 20)};
  const double fy = rng.uniform(0.3, 1.2);
  const double fx = rng.uniform(0.3, 1.2);

  Image img(Shape{height, width, channels});
  for (std::size_t m = 0; m < height; ++m)
    for (std::size_t n = 0; n < width; ++n) {
      const double wave = std::sin(2 * std::numbers::pi * (fy * m / std::max<std::size_t>(height, 1) +
                                                           fx * n / std::max<std::size_t>(width, 1)));
      for (std::size_t c = 0; c < channels; ++c) {
        const auto& p = params[c];
        const double jitter = static_cast<double>(rng.below(3)) - 1.0;
        img.at(m, n, c) = clamp_sample(p[0] + p[1] * m + p[2] * n + p[3] * wave + jitter);
      }
    }
  return img;
}

std::vector<Image> wsi_corpus(std::size_t count, std::size_t height, std::size_t width, std::uint64_t seed) {
  std::vector<Image> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(wsi_patch(height, width, mix(seed, i)));
  return out;
}

Image sample_matrix() {
  // clang-format off
  static constexpr std::uint8_t kValues[8 * 8 * 3] = {
#include "sample_matrix.inc"
  };
  // clang-format on
  return Image(Shape{8, 8, 3}, Bytes(std::begin(kValues), std::end(kValues)));
}

}  // namespace wise::synthetic
