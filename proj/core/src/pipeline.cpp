#include "wise/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "wise/bitplane.hpp"
#include "wise/error.hpp"
#include "wise/transform.hpp"

namespace wise {

namespace {

std::string origin_label(const PatchRecord& p) {
  return "patch at origin (" + std::to_string(p.origin_row) + ", " + std::to_string(p.origin_col) + ")";
}

unsigned resolve_threads(unsigned requested, std::size_t jobs) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs fn(i) for i in [0, count) on `threads` workers. The first exception
// (lowest index) wins so failures are reported deterministically.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Image extract_tile(const Image& src, std::size_t row, std::size_t col, std::size_t h, std::size_t w) {
  const std::size_t chans = src.channels();
  Bytes out(h * w * chans);
  const auto s = src.samples();
  for (std::size_t m = 0; m < h; ++m) {
    const auto* from = s.data() + src.index(row + m, col, 0);
    std::copy(from, from + w * chans, out.begin() + m * w * chans);
  }
  return Image(Shape{h, w, chans}, std::move(out));
}

void place_tile(Image& dst, const Image& tile, std::size_t row, std::size_t col) {
  const std::size_t span = tile.width() * tile.channels();
  auto d = dst.samples();
  const auto t = tile.samples();
  for (std::size_t m = 0; m < tile.height(); ++m)
    std::copy(t.begin() + m * span, t.begin() + (m + 1) * span, d.begin() + dst.index(row + m, col, 0));
}

}  // namespace

CropResult crop_empty(const Image& image) {
  const std::size_t rows = image.height();
  const std::size_t cols = image.width();
  const std::size_t chans = image.channels();
  std::vector<bool> row_live(rows, false);
  std::vector<bool> col_live(cols, false);
  for (std::size_t m = 0; m < rows; ++m)
    for (std::size_t n = 0; n < cols; ++n)
      for (std::size_t c = 0; c < chans; ++c)
        if (image.at(m, n, c) != 0) {
          row_live[m] = true;
          col_live[n] = true;
        }

  CropResult result;
  result.original = image.shape();
  std::vector<std::size_t> kept_rows;
  std::vector<std::size_t> kept_cols;
  for (std::size_t m = 0; m < rows; ++m)
    row_live[m] ? kept_rows.push_back(m) : result.removed_rows.push_back(static_cast<std::uint32_t>(m));
  for (std::size_t n = 0; n < cols; ++n)
    col_live[n] ? kept_cols.push_back(n) : result.removed_cols.push_back(static_cast<std::uint32_t>(n));

  Image cropped(Shape{kept_rows.size(), kept_cols.size(), chans});
  for (std::size_t i = 0; i < kept_rows.size(); ++i)
    for (std::size_t j = 0; j < kept_cols.size(); ++j)
      for (std::size_t c = 0; c < chans; ++c) cropped.at(i, j, c) = image.at(kept_rows[i], kept_cols[j], c);
  result.cropped = std::move(cropped);
  return result;
}

Image uncrop(const Image& cropped, std::span<const std::uint32_t> removed_rows,
             std::span<const std::uint32_t> removed_cols, const Shape& original) {
  auto check = [](std::span<const std::uint32_t> list, std::size_t bound, std::size_t kept,
                  const char* what) {
    if (list.size() + kept != bound)
      throw Error(ErrorKind::Structural, std::string("removed ") + what + " count does not match dimensions");
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i] >= bound || (i > 0 && list[i] <= list[i - 1]))
        throw Error(ErrorKind::Structural, std::string("removed ") + what + " indices invalid");
  };
  if (cropped.channels() != original.channels)
    throw Error(ErrorKind::Structural, "cropped and original channel counts differ");
  check(removed_rows, original.height, cropped.height(), "row");
  check(removed_cols, original.width, cropped.width(), "column");

  auto kept = [](std::span<const std::uint32_t> removed, std::size_t bound) {
    std::vector<std::size_t> out;
    out.reserve(bound - removed.size());
    std::size_t r = 0;
    for (std::size_t i = 0; i < bound; ++i) {
      if (r < removed.size() && removed[r] == i)
        ++r;
      else
        out.push_back(i);
    }
    return out;
  };
  const auto rows = kept(removed_rows, original.height);
  const auto cols = kept(removed_cols, original.width);

  Image out(original);
  const std::size_t chans = original.channels;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t c = 0; c < chans; ++c) out.at(rows[i], cols[j], c) = cropped.at(i, j, c);
  return out;
}

AlphaStrip strip_alpha(const Image& image, bool enabled) {
  AlphaStrip result{image, false, std::nullopt};
  if (!enabled) return result;
  if (image.channels() != 4) {
    result.warning = "--drop-alpha ignored: input has " + std::to_string(image.channels()) +
                     " channels, not 4";
    return result;
  }
  const std::size_t pixels = image.shape().pixels();
  Bytes rgb(pixels * 3);
  const auto s = image.samples();
  for (std::size_t p = 0; p < pixels; ++p)
    std::copy(s.begin() + p * 4, s.begin() + p * 4 + 3, rgb.begin() + p * 3);
  result.image = Image(Shape{image.height(), image.width(), 3}, std::move(rgb));
  result.dropped = true;
  return result;
}

std::uint8_t CompressionConfig::stage_mask() const noexcept {
  std::uint8_t mask = kStageLzw;
  if (enable_projection) mask |= kStageProjection;
  if (enable_bitplane) mask |= kStageBitplane;
  return mask;
}

Bytes encode_patch(const Image& patch, std::uint8_t stage_mask, unsigned lzw_max_width) {
  ResidualPatch stage = (stage_mask & kStageProjection)
                            ? project(patch)
                            : ResidualPatch(patch.shape(), Bytes(patch.samples().begin(), patch.samples().end()));
  Bytes bytes = (stage_mask & kStageBitplane) ? to_bitplanes(stage) : std::move(stage).release();
  if (stage_mask & kStageLzw) return lzw::encode(bytes, lzw_max_width).packed;
  return bytes;
}

Image decode_patch(std::span<const std::uint8_t> payload, const Shape& shape, std::uint8_t stage_mask,
                   unsigned lzw_max_width) {
  Bytes bytes = (stage_mask & kStageLzw) ? lzw::decode(payload, lzw_max_width)
                                         : Bytes(payload.begin(), payload.end());
  ResidualPatch stage;
  if (stage_mask & kStageBitplane) {
    stage = from_bitplanes(bytes, shape);
  } else {
    if (bytes.size() != shape.samples())
      throw Error(ErrorKind::Structural, "decoded " + std::to_string(bytes.size()) + " bytes, expected " +
                                             std::to_string(shape.samples()));
    stage = ResidualPatch(shape, std::move(bytes));
  }
  if (stage_mask & kStageProjection) return unproject(stage);
  return Image(shape, std::move(stage).release());
}

CompressResult compress(const Image& image, const CompressionConfig& config) {
  if (config.patch_size == 0) throw Error(ErrorKind::InvalidArgument, "patch size must be positive");
  if (config.lzw_max_width < lzw::kMinWidth || config.lzw_max_width > lzw::kMaxWidthLimit)
    throw Error(ErrorKind::InvalidArgument, "LZW max code width must be in [9, 20]");
  if (image.height() > std::numeric_limits<std::uint32_t>::max() ||
      image.width() > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorKind::InvalidArgument, "image dimensions exceed 32 bits");

  CompressResult result;
  AlphaStrip alpha = strip_alpha(image, config.drop_alpha);
  if (alpha.warning) result.warnings.push_back(*alpha.warning);
  if (alpha.image.channels() == 4)
    throw Error(ErrorKind::UnsupportedLayout,
                "4-channel input needs --drop-alpha (alpha is discarded, making the result lossy)");

  CropResult crop = crop_empty(alpha.image);
  const Image& body = crop.cropped;

  Container c;
  c.header.flags = static_cast<std::uint16_t>(config.lzw_max_width << kFlagLzwWidthShift);
  if (alpha.dropped) c.header.flags |= kFlagAlphaDropped;
  c.header.width = static_cast<std::uint32_t>(image.width());
  c.header.height = static_cast<std::uint32_t>(image.height());
  c.header.channels = static_cast<std::uint8_t>(body.channels());
  c.header.patch_size = config.patch_size;
  c.crop.removed_rows = std::move(crop.removed_rows);
  c.crop.removed_cols = std::move(crop.removed_cols);

  const std::size_t ps = config.patch_size;
  if (!body.empty()) {
    for (std::size_t row = 0; row < body.height(); row += ps)
      for (std::size_t col = 0; col < body.width(); col += ps) {
        PatchRecord p;
        p.origin_row = static_cast<std::uint32_t>(row);
        p.origin_col = static_cast<std::uint32_t>(col);
        p.height = static_cast<std::uint32_t>(std::min(ps, body.height() - row));
        p.width = static_cast<std::uint32_t>(std::min(ps, body.width() - col));
        p.uncompressed_length = std::uint64_t{p.height} * p.width * body.channels();
        p.stage_mask = config.stage_mask();
        c.patches.push_back(p);
      }
  }

  c.payloads.resize(c.patches.size());
  parallel_for(c.patches.size(), resolve_threads(config.threads, c.patches.size()), [&](std::size_t i) {
    const PatchRecord& p = c.patches[i];
    const Image tile = extract_tile(body, p.origin_row, p.origin_col, p.height, p.width);
    c.payloads[i] = encode_patch(tile, p.stage_mask, config.lzw_max_width);
  });
  for (std::size_t i = 0; i < c.patches.size(); ++i) c.patches[i].compressed_length = c.payloads[i].size();

  result.bytes = container_write(c);
  return result;
}

DecompressResult decompress(std::span<const std::uint8_t> container_bytes, unsigned threads) {
  const Container c = container_read(container_bytes);
  const unsigned max_width = c.header.lzw_max_width();
  const std::size_t chans = c.header.channels;
  if (max_width < lzw::kMinWidth || max_width > lzw::kMaxWidthLimit)
    throw Error(ErrorKind::Structural, "container records invalid LZW width " + std::to_string(max_width));

  Image body(Shape{c.cropped_height(), c.cropped_width(), chans});
  parallel_for(c.patches.size(), resolve_threads(threads, c.patches.size()), [&](std::size_t i) {
    const PatchRecord& p = c.patches[i];
    try {
      const Image tile = decode_patch(c.payloads[i], Shape{p.height, p.width, chans}, p.stage_mask, max_width);
      place_tile(body, tile, p.origin_row, p.origin_col);
    } catch (const Error& e) {
      throw Error(e.kind(), origin_label(p) + ": " + e.what());
    }
  });

  DecompressResult result;
  result.image = uncrop(body, c.crop.removed_rows, c.crop.removed_cols,
                        Shape{c.header.height, c.header.width, chans});
  result.alpha_dropped = c.header.alpha_dropped();
  return result;
}

}  // namespace wise
