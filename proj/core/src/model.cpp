#include "r2d2/model.hpp"

#include <cmath>

#include "r2d2/error.hpp"

namespace r2d2 {

GradientStep::GradientStep(double gamma) : gamma_(gamma) {
  require(std::isfinite(gamma) && gamma >= 0.0 && gamma < 2.0, "gradient step: gamma must lie in [0, 2)");
}

Image GradientStep::apply(const Image& residual, const Image& estimate) const {
  require_data(residual.same_shape(estimate), "gradient step: dimension mismatch");
  return gamma_ * residual;
}

std::shared_ptr<const ImageUpdate> baseline_gradient_step(double gamma) {
  return std::make_shared<GradientStep>(gamma);
}

}  // namespace r2d2
