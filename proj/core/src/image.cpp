#include "wise/image.hpp"

#include <string>

#include "wise/error.hpp"

namespace wise::detail {

namespace {

void check_channels(const Shape& shape) {
  if (shape.channels != 1 && shape.channels != 3 && shape.channels != 4)
    throw Error(ErrorKind::UnsupportedLayout,
                "channel count must be 1, 3 or 4, got " + std::to_string(shape.channels));
}

}  // namespace

template <class Tag>
Raster<Tag>::Raster(Shape shape) : shape_(shape), samples_(shape.samples(), 0) {
  check_channels(shape_);
}

template <class Tag>
Raster<Tag>::Raster(Shape shape, Bytes samples) : shape_(shape), samples_(std::move(samples)) {
  check_channels(shape_);
  if (samples_.size() != shape_.samples())
    throw Error(ErrorKind::Structural,
                "sample count " + std::to_string(samples_.size()) + " does not match " +
                    std::to_string(shape_.height) + "x" + std::to_string(shape_.width) + "x" +
                    std::to_string(shape_.channels));
}

template class Raster<ImageTag>;
template class Raster<ResidualTag>;

}  // namespace wise::detail
