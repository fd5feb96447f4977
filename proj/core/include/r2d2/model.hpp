#pragma once

#include <memory>
#include <string>

#include "r2d2/image.hpp"
#include "r2d2/unet.hpp"

namespace r2d2 {

/// One stage of the series: maps (residual, estimate) to an image update.
class ImageUpdate {
 public:
  virtual ~ImageUpdate() = default;
  virtual Image apply(const Image& residual, const Image& estimate) const = 0;
  virtual std::string kind() const = 0;
};

/// G(r, x) = gamma * r. A network-free Landweber step.
class GradientStep final : public ImageUpdate {
 public:
  explicit GradientStep(double gamma);
  double gamma() const noexcept { return gamma_; }
  Image apply(const Image& residual, const Image& estimate) const override;
  std::string kind() const override { return "gradient_step"; }

 private:
  double gamma_;
};

class NetworkUpdate final : public ImageUpdate {
 public:
  explicit NetworkUpdate(UNet net) : net_(std::move(net)) {}
  const UNet& network() const noexcept { return net_; }
  Image apply(const Image& residual, const Image& estimate) const override {
    return net_.forward(residual, estimate);
  }
  std::string kind() const override { return "unet"; }

 private:
  UNet net_;
};

/// gamma in [0, 2).
std::shared_ptr<const ImageUpdate> baseline_gradient_step(double gamma);

}  // namespace r2d2
