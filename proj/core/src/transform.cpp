#include "wise/transform.hpp"

#include <string>

#include "wise/error.hpp"

namespace wise {

namespace {

void require_projectable(std::size_t channels) {
  if (channels != 1 && channels != 3)
    throw Error(ErrorKind::UnsupportedLayout,
                "projection needs 1 or 3 channels, got " + std::to_string(channels) +
                    " (strip or keep alpha upstream)");
}

}  // namespace

ResidualPatch project(const Image& patch) {
  require_projectable(patch.channels());
  const std::size_t rows = patch.height();
  const std::size_t cols = patch.width();
  const std::size_t chans = patch.channels();
  const std::size_t stride = cols * chans;
  const auto x = patch.samples();

  // Row pass reads the untouched source; walk bottom-up so each row is
  // differenced against the original row above it.
  Bytes buf(x.begin(), x.end());
  for (std::size_t m = rows; m-- > 1;)
    for (std::size_t i = 0; i < stride; ++i)
      buf[m * stride + i] = static_cast<std::uint8_t>(buf[m * stride + i] - buf[(m - 1) * stride + i]);

  // Column pass, right to left for the same reason.
  for (std::size_t m = 0; m < rows; ++m) {
    std::uint8_t* row = buf.data() + m * stride;
    for (std::size_t n = cols; n-- > 1;)
      for (std::size_t c = 0; c < chans; ++c)
        row[n * chans + c] = static_cast<std::uint8_t>(row[n * chans + c] - row[(n - 1) * chans + c]);
  }

  if (chans == 3) {
    for (std::size_t p = 0; p < rows * cols; ++p) {
      std::uint8_t* px = buf.data() + p * 3;
      px[1] = static_cast<std::uint8_t>(px[1] - px[0]);
      px[2] = static_cast<std::uint8_t>(px[2] - px[0]);
    }
  }

  for (auto& v : buf) v = zigzag(static_cast<std::int8_t>(v));
  return ResidualPatch(patch.shape(), std::move(buf));
}

Image unproject(const ResidualPatch& residuals) {
  require_projectable(residuals.channels());
  const std::size_t rows = residuals.height();
  const std::size_t cols = residuals.width();
  const std::size_t chans = residuals.channels();
  const std::size_t stride = cols * chans;

  Bytes buf(residuals.samples().size());
  const auto z = residuals.samples();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = static_cast<std::uint8_t>(unzigzag(z[i]));

  if (chans == 3) {
    for (std::size_t p = 0; p < rows * cols; ++p) {
      std::uint8_t* px = buf.data() + p * 3;
      px[1] = static_cast<std::uint8_t>(px[1] + px[0]);
      px[2] = static_cast<std::uint8_t>(px[2] + px[0]);
    }
  }

  for (std::size_t m = 0; m < rows; ++m) {
    std::uint8_t* row = buf.data() + m * stride;
    for (std::size_t n = 1; n < cols; ++n)
      for (std::size_t c = 0; c < chans; ++c)
        row[n * chans + c] = static_cast<std::uint8_t>(row[n * chans + c] + row[(n - 1) * chans + c]);
  }

  for (std::size_t m = 1; m < rows; ++m)
    for (std::size_t i = 0; i < stride; ++i)
      buf[m * stride + i] = static_cast<std::uint8_t>(buf[m * stride + i] + buf[(m - 1) * stride + i]);

  return Image(residuals.shape(), std::move(buf));
}

}  // namespace wise
