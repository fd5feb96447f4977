#include "r2d2/unet.hpp"

#include <cmath>

#include "r2d2/error.hpp"

namespace r2d2 {
namespace {

std::size_t channels_at(const UNetConfig& c, int level) {
  return static_cast<std::size_t>(c.base_channels) << level;
}

// Conv layer shapes in execution order; shared by the layout and the count.
std::vector<std::pair<std::string, layers::ConvShape>> conv_plan(const UNetConfig& c) {
  std::vector<std::pair<std::string, layers::ConvShape>> plan;
  std::size_t in = static_cast<std::size_t>(c.in_channels);
  for (int l = 0; l < c.depth; ++l) {
    const std::size_t ch = channels_at(c, l);
    plan.push_back({"enc" + std::to_string(l) + ".conv1", {in, ch}});
    plan.push_back({"enc" + std::to_string(l) + ".conv2", {ch, ch}});
    in = ch;
  }
  const std::size_t bottom = channels_at(c, c.depth);
  plan.push_back({"bottleneck.conv1", {in, bottom}});
  plan.push_back({"bottleneck.conv2", {bottom, bottom}});
  for (int l = c.depth - 1; l >= 0; --l) {
    const std::size_t ch = channels_at(c, l);
    plan.push_back({"dec" + std::to_string(l) + ".up", {channels_at(c, l + 1), ch}});
    plan.push_back({"dec" + std::to_string(l) + ".merge", {2 * ch, ch}});
    plan.push_back({"dec" + std::to_string(l) + ".conv", {ch, ch}});
  }
  plan.push_back({"head", {channels_at(c, 0), static_cast<std::size_t>(c.out_channels)}});
  return plan;
}

void validate(const UNetConfig& c) {
  require(c.depth >= 1 && c.depth <= 6, "UNet: depth must be in [1, 6]");
  require(c.base_channels >= 1, "UNet: base channels must be positive");
  require(c.in_channels >= 1 && c.out_channels >= 1, "UNet: channel counts must be positive");
}

}  // namespace

UNet::UNet(UNetConfig config) : config_(config) {
  validate(config_);
  std::size_t offset = 0;
  for (auto& [name, shape] : conv_plan(config_)) {
    layers_.push_back({name, shape, offset});
    offset += shape.param_count();
  }
  params_.assign(offset, 0.0);
}

std::size_t UNet::parameter_count(const UNetConfig& c) {
  validate(c);
  const auto conv = [](std::size_t in, std::size_t out) { return 9 * in * out + out; };
  const auto C = [&](int l) { return channels_at(c, l); };
  std::size_t total = 0;
  for (int l = 0; l < c.depth; ++l) {
    total += conv(l == 0 ? static_cast<std::size_t>(c.in_channels) : C(l - 1), C(l)) + conv(C(l), C(l));
  }
  total += conv(C(c.depth - 1), C(c.depth)) + conv(C(c.depth), C(c.depth));
  for (int l = 0; l < c.depth; ++l) total += conv(C(l + 1), C(l)) + conv(2 * C(l), C(l)) + conv(C(l), C(l));
  total += conv(C(0), static_cast<std::size_t>(c.out_channels));
  return total;
}

void UNet::initialize(Rng& rng, bool zero_final_layer) {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& layer = layers_[k];
    double* p = params_.data() + layer.offset;
    const bool zero = zero_final_layer && k + 1 == layers_.size();
    const double stddev = std::sqrt(2.0 / (9.0 * static_cast<double>(layer.shape.in)));
    for (std::size_t j = 0; j < layer.shape.weight_count(); ++j) p[j] = zero ? 0.0 : stddev * rng.gaussian();
    for (std::size_t j = 0; j < layer.shape.out; ++j) p[layer.shape.weight_count() + j] = 0.0;
  }
}

std::span<const double> UNet::layer_params(std::size_t k) const {
  return {params_.data() + layers_[k].offset, layers_[k].shape.param_count()};
}

Tensor UNet::conv(std::size_t k, const Tensor& in, bool activate, Cache* cache) const {
  Tensor out = layers::conv3x3(in, layers_[k].shape, layer_params(k));
  if (activate) layers::relu_inplace(out);
  if (cache) {
    cache->inputs[k] = in;
    cache->outputs[k] = out;
  }
  return out;
}

Tensor UNet::forward(const Tensor& input, Cache* cache) const {
  require_data(input.channels == static_cast<std::size_t>(config_.in_channels), "UNet: input channel mismatch");
  const std::size_t factor = std::size_t{1} << config_.depth;
  require_data(input.height % factor == 0 && input.width % factor == 0 && input.height > 0 && input.width > 0,
               "UNet: spatial size must be divisible by 2^depth");
  if (cache) {
    cache->inputs.assign(layers_.size(), {});
    cache->outputs.assign(layers_.size(), {});
  }
  std::size_t k = 0;
  std::vector<Tensor> skips;
  Tensor x = input;
  for (int l = 0; l < config_.depth; ++l) {
    x = conv(k++, x, true, cache);
    x = conv(k++, x, true, cache);
    skips.push_back(x);
    x = layers::avg_pool2(x);
  }
  x = conv(k++, x, true, cache);
  x = conv(k++, x, true, cache);
  for (int l = config_.depth - 1; l >= 0; --l) {
    x = conv(k++, layers::upsample2(x), true, cache);
    x = conv(k++, layers::concat(x, skips[static_cast<std::size_t>(l)]), true, cache);
    x = conv(k++, x, true, cache);
  }
  return conv(k++, x, false, cache);
}

Image UNet::forward(const Image& r, const Image& x) const {
  require_data(r.same_shape(x), "UNet: residual and estimate dimensions differ");
  return unstack(forward(stack({&r, &x})), 0);
}

Tensor UNet::conv_back(std::size_t k, const Cache& cache, Tensor grad, bool activated,
                       std::span<double> grad_params) const {
  if (activated) layers::relu_backward_inplace(cache.outputs[k], grad);
  const Layer& layer = layers_[k];
  return layers::conv3x3_backward(cache.inputs[k], layer.shape, layer_params(k), grad,
                                  grad_params.subspan(layer.offset, layer.shape.param_count()));
}

Tensor UNet::backward(const Cache& cache, const Tensor& grad_output, std::span<double> grad_params) const {
  require(cache.inputs.size() == layers_.size() && !cache.inputs.back().data.empty(),
          "UNet::backward: missing forward cache");
  require(grad_params.size() == params_.size(), "UNet::backward: gradient buffer size mismatch");
  std::size_t k = layers_.size() - 1;
  Tensor g = conv_back(k, cache, grad_output, false, grad_params);
  std::vector<Tensor> skip_grads(static_cast<std::size_t>(config_.depth));
  for (int l = 0; l < config_.depth; ++l) {
    g = conv_back(--k, cache, std::move(g), true, grad_params);
    g = conv_back(--k, cache, std::move(g), true, grad_params);
    auto [g_up, g_skip] = layers::concat_backward(g, channels_at(config_, l));
    skip_grads[static_cast<std::size_t>(l)] = std::move(g_skip);
    g = conv_back(--k, cache, std::move(g_up), true, grad_params);
    g = layers::upsample2_backward(g);
  }
  g = conv_back(--k, cache, std::move(g), true, grad_params);
  g = conv_back(--k, cache, std::move(g), true, grad_params);
  for (int l = config_.depth - 1; l >= 0; --l) {
    g = layers::avg_pool2_backward(g);
    const Tensor& skip = skip_grads[static_cast<std::size_t>(l)];
    for (std::size_t p = 0; p < g.size(); ++p) g.data[p] += skip.data[p];
    g = conv_back(--k, cache, std::move(g), true, grad_params);
    g = conv_back(--k, cache, std::move(g), true, grad_params);
  }
  return g;
}

}  // namespace r2d2
