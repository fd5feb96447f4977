#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace r2d2 {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Bias-corrected Adam over a flat parameter vector.
class Adam {
 public:
  Adam(std::size_t parameter_count, AdamConfig config = {});

  const AdamConfig& config() const noexcept { return config_; }
  std::int64_t steps() const noexcept { return t_; }

  /// Throws NumericalError on non-finite gradients (parameters untouched).
  void step(std::span<double> params, std::span<const double> grads);

 private:
  AdamConfig config_;
  std::int64_t t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

}  // namespace r2d2
