#include "r2d2/layers.hpp"

#include <algorithm>

#include "r2d2/error.hpp"

namespace r2d2::layers {
namespace {

// Row/column ranges of output positions whose tap (dy, dx) stays inside.
struct Window {
  std::size_t i0, i1, j0, j1;
};

inline Window valid_window(std::size_t h, std::size_t w, int dy, int dx) {
  return {dy < 0 ? 1u : 0u, dy > 0 ? h - 1 : h, dx < 0 ? 1u : 0u, dx > 0 ? w - 1 : w};
}

inline std::size_t shifted(std::size_t v, int d) {
  return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(v) + d);
}

}  // namespace

Tensor conv3x3(const Tensor& input, ConvShape shape, std::span<const double> params) {
  require_data(input.channels == shape.in, "conv3x3: input channel mismatch");
  require_data(params.size() == shape.param_count(), "conv3x3: parameter count mismatch");
  const std::size_t h = input.height, w = input.width;
  Tensor out(shape.out, h, w);
  const double* bias = params.data() + shape.weight_count();
  for (std::size_t o = 0; o < shape.out; ++o) {
    double* dst = out.channel(o).data();
    std::fill(dst, dst + h * w, bias[o]);
    for (std::size_t c = 0; c < shape.in; ++c) {
      const double* src = input.channel(c).data();
      const double* k = params.data() + (o * shape.in + c) * 9;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const double wv = k[ky * 3 + kx];
          const int dy = ky - 1, dx = kx - 1;
          const Window win = valid_window(h, w, dy, dx);
          const std::size_t n = win.j1 - win.j0;
          for (std::size_t i = win.i0; i < win.i1; ++i) {
            double* row = dst + i * w + win.j0;
            const double* in_row = src + shifted(i, dy) * w + shifted(win.j0, dx);
            for (std::size_t j = 0; j < n; ++j) row[j] += wv * in_row[j];
          }
        }
      }
    }
  }
  return out;
}

Tensor conv3x3_backward(const Tensor& input, ConvShape shape, std::span<const double> params,
                        const Tensor& grad_output, std::span<double> grad_params) {
  require_data(grad_output.channels == shape.out && grad_output.height == input.height &&
                   grad_output.width == input.width,
               "conv3x3_backward: gradient shape mismatch");
  require_data(grad_params.size() == shape.param_count(), "conv3x3_backward: gradient buffer mismatch");
  const std::size_t h = input.height, w = input.width;
  Tensor grad_in(shape.in, h, w);
  double* grad_bias = grad_params.data() + shape.weight_count();
  for (std::size_t o = 0; o < shape.out; ++o) {
    const double* g = grad_output.channel(o).data();
    double bsum = 0.0;
    for (std::size_t p = 0; p < h * w; ++p) bsum += g[p];
    grad_bias[o] += bsum;
    for (std::size_t c = 0; c < shape.in; ++c) {
      const double* src = input.channel(c).data();
      double* gin = grad_in.channel(c).data();
      const double* k = params.data() + (o * shape.in + c) * 9;
      double* gk = grad_params.data() + (o * shape.in + c) * 9;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const double wv = k[ky * 3 + kx];
          const int dy = ky - 1, dx = kx - 1;
          const Window win = valid_window(h, w, dy, dx);
          const std::size_t n = win.j1 - win.j0;
          double acc = 0.0;
          for (std::size_t i = win.i0; i < win.i1; ++i) {
            const double* grow = g + i * w + win.j0;
            const std::size_t offset = shifted(i, dy) * w + shifted(win.j0, dx);
            const double* in_row = src + offset;
            double* gin_row = gin + offset;
            for (std::size_t j = 0; j < n; ++j) {
              acc += grow[j] * in_row[j];
              gin_row[j] += wv * grow[j];
            }
          }
          gk[ky * 3 + kx] += acc;
        }
      }
    }
  }
  return grad_in;
}

void relu_inplace(Tensor& t) {
  for (auto& v : t.data) v = std::max(v, 0.0);
}

void relu_backward_inplace(const Tensor& output, Tensor& grad) {
  require_data(output.same_shape(grad), "relu_backward: shape mismatch");
  for (std::size_t k = 0; k < grad.size(); ++k) {
    if (!(output.data[k] > 0.0)) grad.data[k] = 0.0;
  }
}

Tensor avg_pool2(const Tensor& input) {
  require_data(input.height % 2 == 0 && input.width % 2 == 0, "avg_pool2: odd spatial size");
  Tensor out(input.channels, input.height / 2, input.width / 2);
  for (std::size_t c = 0; c < input.channels; ++c) {
    for (std::size_t i = 0; i < out.height; ++i) {
      for (std::size_t j = 0; j < out.width; ++j) {
        out.at(c, i, j) = 0.25 * (input.at(c, 2 * i, 2 * j) + input.at(c, 2 * i, 2 * j + 1) +
                                  input.at(c, 2 * i + 1, 2 * j) + input.at(c, 2 * i + 1, 2 * j + 1));
      }
    }
  }
  return out;
}

Tensor avg_pool2_backward(const Tensor& grad_output) {
  Tensor grad(grad_output.channels, grad_output.height * 2, grad_output.width * 2);
  for (std::size_t c = 0; c < grad.channels; ++c) {
    for (std::size_t i = 0; i < grad.height; ++i) {
      for (std::size_t j = 0; j < grad.width; ++j) grad.at(c, i, j) = 0.25 * grad_output.at(c, i / 2, j / 2);
    }
  }
  return grad;
}

Tensor upsample2(const Tensor& input) {
  Tensor out(input.channels, input.height * 2, input.width * 2);
  for (std::size_t c = 0; c < out.channels; ++c) {
    for (std::size_t i = 0; i < out.height; ++i) {
      for (std::size_t j = 0; j < out.width; ++j) out.at(c, i, j) = input.at(c, i / 2, j / 2);
    }
  }
  return out;
}

Tensor upsample2_backward(const Tensor& grad_output) {
  require_data(grad_output.height % 2 == 0 && grad_output.width % 2 == 0,
               "upsample2_backward: odd spatial size");
  Tensor grad(grad_output.channels, grad_output.height / 2, grad_output.width / 2);
  for (std::size_t c = 0; c < grad_output.channels; ++c) {
    for (std::size_t i = 0; i < grad_output.height; ++i) {
      for (std::size_t j = 0; j < grad_output.width; ++j) grad.at(c, i / 2, j / 2) += grad_output.at(c, i, j);
    }
  }
  return grad;
}

Tensor concat(const Tensor& a, const Tensor& b) {
  require_data(a.height == b.height && a.width == b.width, "concat: spatial size mismatch");
  Tensor out(a.channels + b.channels, a.height, a.width);
  std::copy(a.data.begin(), a.data.end(), out.data.begin());
  std::copy(b.data.begin(), b.data.end(), out.data.begin() + static_cast<std::ptrdiff_t>(a.size()));
  return out;
}

std::pair<Tensor, Tensor> concat_backward(const Tensor& grad_output, std::size_t a_channels) {
  require_data(a_channels <= grad_output.channels, "concat_backward: channel split out of range");
  Tensor ga(a_channels, grad_output.height, grad_output.width);
  Tensor gb(grad_output.channels - a_channels, grad_output.height, grad_output.width);
  const auto split = grad_output.data.begin() + static_cast<std::ptrdiff_t>(ga.size());
  std::copy(grad_output.data.begin(), split, ga.data.begin());
  std::copy(split, grad_output.data.end(), gb.data.begin());
  return {std::move(ga), std::move(gb)};
}

}  // namespace r2d2::layers
