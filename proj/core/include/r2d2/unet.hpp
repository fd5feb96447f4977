#pragma once

#include <string>
#include <vector>

#include "r2d2/image.hpp"
#include "r2d2/layers.hpp"
#include "r2d2/rng.hpp"
#include "r2d2/tensor.hpp"

namespace r2d2 {

struct UNetConfig {
  int depth = 2;
  int base_channels = 8;
  int in_channels = 2;
  int out_channels = 1;

  friend bool operator==(const UNetConfig&, const UNetConfig&) = default;
};

/// Small U-Net: per level two 3x3 conv+ReLU then 2x2 average pooling; a
/// two-conv bottleneck; per decoder level nearest upsampling + conv+ReLU,
/// concatenation with the skip, two conv+ReLU; a final linear 3x3 conv.
/// Level l uses C0 * 2^l channels, the bottleneck C0 * 2^depth.
///
/// All parameters live in one flat vector, conv layers in execution order,
/// each as [out][in][3][3] weights followed by `out` biases.
class UNet {
 public:
  struct Layer {
    std::string name;
    layers::ConvShape shape;
    std::size_t offset = 0;
  };

  /// Forward activations kept for the backward pass.
  struct Cache {
    std::vector<Tensor> inputs;   // per conv layer
    std::vector<Tensor> outputs;  // per conv layer, after activation
  };

  explicit UNet(UNetConfig config = {});

  /// Closed-form parameter count: sum over conv layers of 9*in*out + out.
  static std::size_t parameter_count(const UNetConfig& config);

  const UNetConfig& config() const noexcept { return config_; }
  const std::vector<Layer>& layout() const noexcept { return layers_; }
  std::size_t num_parameters() const noexcept { return params_.size(); }
  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }

  /// He-normal weights, zero biases, and an all-zero final layer.
  void initialize(Rng& rng, bool zero_final_layer = true);

  /// Spatial sizes must be divisible by 2^depth.
  Tensor forward(const Tensor& input, Cache* cache = nullptr) const;
  /// Two-channel input (r, x), one-channel output.
  Image forward(const Image& r, const Image& x) const;

  /// Reverse-mode gradients of <grad_output, forward(input)>. Parameter
  /// gradients are accumulated into `grad_params`; returns the input gradient.
  Tensor backward(const Cache& cache, const Tensor& grad_output, std::span<double> grad_params) const;

 private:
  std::span<const double> layer_params(std::size_t k) const;
  Tensor conv(std::size_t k, const Tensor& in, bool activate, Cache* cache) const;
  Tensor conv_back(std::size_t k, const Cache& cache, Tensor grad, bool activated,
                   std::span<double> grad_params) const;

  UNetConfig config_;
  std::vector<Layer> layers_;
  std::vector<double> params_;
};

}  // namespace r2d2
