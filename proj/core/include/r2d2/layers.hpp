#pragma once

#include <span>

#include "r2d2/tensor.hpp"

namespace r2d2::layers {

/// Shape of a 3x3 "same" convolution. Weights are laid out
/// [out][in][3][3] followed by `out` biases.
struct ConvShape {
  std::size_t in = 0;
  std::size_t out = 0;

  std::size_t weight_count() const noexcept { return out * in * 9; }
  std::size_t param_count() const noexcept { return weight_count() + out; }
};

Tensor conv3x3(const Tensor& input, ConvShape shape, std::span<const double> params);
/// Accumulates parameter gradients into `grad_params`; returns the input gradient.
Tensor conv3x3_backward(const Tensor& input, ConvShape shape, std::span<const double> params,
                        const Tensor& grad_output, std::span<double> grad_params);

void relu_inplace(Tensor& t);
/// Masks `grad` where the forward output was not positive (subgradient 0 at 0).
void relu_backward_inplace(const Tensor& output, Tensor& grad);

Tensor avg_pool2(const Tensor& input);
Tensor avg_pool2_backward(const Tensor& grad_output);

Tensor upsample2(const Tensor& input);
Tensor upsample2_backward(const Tensor& grad_output);

Tensor concat(const Tensor& a, const Tensor& b);
/// Splits a gradient of concat(a, b) back into its two parts.
std::pair<Tensor, Tensor> concat_backward(const Tensor& grad_output, std::size_t a_channels);

}  // namespace r2d2::layers
