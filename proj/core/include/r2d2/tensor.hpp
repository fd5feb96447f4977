#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "r2d2/image.hpp"

namespace r2d2 {

/// Channel-major feature map (C x H x W), f64.
struct Tensor {
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::size_t c, std::size_t h, std::size_t w, double fill = 0.0)
      : channels(c), height(h), width(w), data(c * h * w, fill) {}

  std::size_t plane() const noexcept { return height * width; }
  std::size_t size() const noexcept { return data.size(); }
  double& at(std::size_t c, std::size_t i, std::size_t j) { return data[(c * height + i) * width + j]; }
  double at(std::size_t c, std::size_t i, std::size_t j) const { return data[(c * height + i) * width + j]; }
  std::span<double> channel(std::size_t c) { return {data.data() + c * plane(), plane()}; }
  std::span<const double> channel(std::size_t c) const { return {data.data() + c * plane(), plane()}; }
  bool same_shape(const Tensor& o) const noexcept {
    return channels == o.channels && height == o.height && width == o.width;
  }
};

/// Stacks single-channel images into a tensor.
Tensor stack(std::initializer_list<const Image*> images);
/// Channel c of t as an image.
Image unstack(const Tensor& t, std::size_t c = 0);

}  // namespace r2d2
