#include "r2d2/tensor.hpp"

#include <algorithm>

#include "r2d2/error.hpp"

namespace r2d2 {

Tensor stack(std::initializer_list<const Image*> images) {
  require(images.size() > 0, "stack: no images");
  const Image& first = **images.begin();
  Tensor t(images.size(), first.height(), first.width());
  std::size_t c = 0;
  for (const Image* img : images) {
    require_data(img->same_shape(first), "stack: image dimensions differ");
    std::copy(img->data().begin(), img->data().end(), t.channel(c++).begin());
  }
  return t;
}

Image unstack(const Tensor& t, std::size_t c) {
  require(c < t.channels, "unstack: channel out of range");
  const auto ch = t.channel(c);
  return Image(t.height, t.width, std::vector<double>(ch.begin(), ch.end()));
}

}  // namespace r2d2
