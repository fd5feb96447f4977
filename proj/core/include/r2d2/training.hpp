#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "r2d2/adam.hpp"
#include "r2d2/engine.hpp"
#include "r2d2/problems.hpp"
#include "r2d2/unet.hpp"

namespace r2d2 {

struct TrainConfig {
  std::size_t image_size = 32;
  std::size_t radius = 0;  // 0: image_size
  std::size_t samples = 200;
  std::size_t validation_samples = 20;
  std::size_t min_spokes = 8;
  std::size_t max_spokes = 80;
  double min_dr = 10.0;
  double max_dr = 1e4;
  std::size_t stages = 3;
  std::size_t epochs = 20;
  std::size_t batch_size = 4;
  double learning_rate = 1e-4;
  std::uint64_t seed = 1;
  DcMode dc_mode = DcMode::Exact;
  UNetConfig network{};
  int dcf_iterations = 10;

  /// Throws InvalidArgument on inconsistent settings.
  void validate() const;
};

struct StageReport {
  std::size_t stage = 0;
  double initial_loss = 0.0;             // dataset loss before the first update
  std::vector<double> epoch_losses;      // mean per-sample loss seen during each epoch
  double train_mean_snr = 0.0;           // after applying the trained stage
  double validation_mean_snr = 0.0;
  double validation_mean_logsnr = 0.0;
};

struct TrainResult {
  ModelSeries series;
  std::vector<StageReport> stages;
  double validation_mean_snr_backprojection = 0.0;
};

using TrainLogger = std::function<void(const std::string&)>;

/// Sequential training: stage i fits G_i on (r^{i-1}, x^{i-1}) produced by
/// the frozen stages before it, minimizing the mean over samples of
/// || xbar - [x^{i-1} + G(r^{i-1}, x^{i-1})]_+ ||_1 with xbar, x^{i-1} and
/// r^{i-1} divided by alpha^{i-1}. Parameters are rounded to f32 at the end
/// of each stage so saved checkpoints reproduce the in-memory series.
TrainResult train_series(const TrainConfig& config, const PhantomSource& phantoms,
                         const TrainLogger& log = {});

/// Per-sample normalized loss and its gradient with respect to the network
/// output. `residual`, `estimate`, `target` are already divided by alpha.
double projected_l1_loss(const Image& estimate, const Image& output, const Image& target,
                         Image* grad_output);

}  // namespace r2d2
