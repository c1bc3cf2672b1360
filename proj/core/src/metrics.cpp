#include "wise/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "wise/bitplane.hpp"
#include "wise/error.hpp"
#include "wise/lzw.hpp"
#include "wise/transform.hpp"

namespace wise::metrics {

namespace {

double entropy_term(std::size_t count, double total) {
  if (count == 0) return 0.0;
  const double p = static_cast<double>(count) / total;
  return -p * std::log2(p);
}

}  // namespace

double shannon_entropy(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw Error(ErrorKind::UndefinedEntropy, "entropy of an empty sequence is undefined");
  std::array<std::size_t, 256> hist{};
  for (std::uint8_t b : bytes) ++hist[b];
  const auto total = static_cast<double>(bytes.size());
  double h = 0.0;
  for (std::size_t count : hist) h += entropy_term(count, total);
  return h;
}

double shannon_entropy(std::span<const std::uint32_t> symbols) {
  if (symbols.empty()) throw Error(ErrorKind::UndefinedEntropy, "entropy of an empty sequence is undefined");
  std::vector<std::uint32_t> sorted(symbols.begin(), symbols.end());
  std::sort(sorted.begin(), sorted.end());
  const auto total = static_cast<double>(sorted.size());
  double h = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    h += entropy_term(j - i, total);
    i = j;
  }
  return h;
}

std::vector<StageEntropy> entropy_trace(const Image& patch, const CompressionConfig& config) {
  std::vector<StageEntropy> trace;
  trace.push_back({"raw", shannon_entropy(patch.samples())});

  Bytes stream(patch.samples().begin(), patch.samples().end());
  ResidualPatch residuals(patch.shape(), stream);
  if (config.enable_projection) {
    residuals = project(patch);
    stream.assign(residuals.samples().begin(), residuals.samples().end());
    trace.push_back({"projection", shannon_entropy(stream)});
  }
  if (config.enable_bitplane) {
    stream = to_bitplanes(residuals);
    trace.push_back({"bitplane", shannon_entropy(stream)});
  }
  const auto encoded = lzw::encode(stream, config.lzw_max_width);
  trace.push_back({"dictionary", shannon_entropy(std::span<const std::uint32_t>(encoded.stream.codes))});
  return trace;
}

double compression_ratio(std::uint64_t original_len, std::uint64_t compressed_len) {
  if (compressed_len == 0) throw Error(ErrorKind::Structural, "compressed length is zero");
  return static_cast<double>(original_len) / static_cast<double>(compressed_len);
}

double bitplane_psnr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::Structural, "plane sizes differ: " + std::to_string(a.size()) + " vs " +
                                           std::to_string(b.size()));
  if (a.empty()) throw Error(ErrorKind::Structural, "cannot compare empty planes");
  std::size_t differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) differing += (a[i] != 0) != (b[i] != 0);
  if (differing == 0) return kInfinitePsnr;
  const double mse = static_cast<double>(differing) / static_cast<double>(a.size());
  return 10.0 * std::log10(1.0 / mse);
}

Bytes unpack_plane(std::span<const std::uint8_t> samples, std::size_t channels, std::size_t channel, int bit) {
  const std::size_t pixels = samples.size() / channels;
  Bytes plane(pixels);
  for (std::size_t p = 0; p < pixels; ++p) plane[p] = (samples[p * channels + channel] >> bit) & 1;
  return plane;
}

PsnrMatrix psnr_matrix(const Image& patch, PsnrStage stage) {
  Bytes samples;
  if (stage == PsnrStage::Projected) {
    const ResidualPatch r = project(patch);
    samples.assign(r.samples().begin(), r.samples().end());
  } else {
    samples.assign(patch.samples().begin(), patch.samples().end());
  }
  const std::size_t chans = patch.channels();
  std::vector<Bytes> planes;
  for (std::size_t c = 0; c < chans; ++c)
    for (int bit = 7; bit >= 0; --bit) planes.push_back(unpack_plane(samples, chans, c, bit));

  const std::size_t n = planes.size();
  PsnrMatrix m(n, std::vector<double>(n, kInfinitePsnr));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = bitplane_psnr(planes[i], planes[j]);
  return m;
}

double mean_off_diagonal(const PsnrMatrix& m) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j) {
        sum += m[i][j];
        ++count;
      }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace wise::metrics
