#include "r2d2/adam.hpp"

#include <algorithm>
#include <cmath>

#include "r2d2/error.hpp"

namespace r2d2 {

Adam::Adam(std::size_t parameter_count, AdamConfig config)
    : config_(config), m_(parameter_count, 0.0), v_(parameter_count, 0.0) {
  require(config.learning_rate > 0.0 && config.beta1 >= 0.0 && config.beta1 < 1.0 &&
              config.beta2 >= 0.0 && config.beta2 < 1.0 && config.epsilon > 0.0,
          "Adam: invalid hyper-parameters");
}

void Adam::step(std::span<double> params, std::span<const double> grads) {
  require(params.size() == m_.size() && grads.size() == m_.size(), "Adam: shape mismatch");
  if (!std::all_of(grads.begin(), grads.end(), [](double g) { return std::isfinite(g); })) {
    throw NumericalError("Adam: non-finite gradient");
  }
  ++t_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  for (std::size_t k = 0; k < params.size(); ++k) {
    m_[k] = config_.beta1 * m_[k] + (1.0 - config_.beta1) * grads[k];
    v_[k] = config_.beta2 * v_[k] + (1.0 - config_.beta2) * grads[k] * grads[k];
    const double m_hat = m_[k] / c1;
    const double v_hat = v_[k] / c2;
    params[k] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
  }
}

}  // namespace r2d2
