#include "r2d2/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "r2d2/error.hpp"
#include "r2d2/metrics.hpp"

namespace r2d2 {

void TrainConfig::validate() const {
  const std::size_t r = radius == 0 ? image_size : radius;
  require(samples >= 1, "train: need at least one sample");
  require(stages >= 1, "train: need at least one stage");
  require(epochs >= 1 && batch_size >= 1, "train: epochs and batch size must be positive");
  require(min_spokes >= 1 && min_spokes <= max_spokes && max_spokes <= 4 * r,
          "train: spoke range must lie within [1, 4R]");
  require(min_dr >= 10.0 && min_dr <= max_dr && max_dr <= 1e4, "train: DR range must lie within [10, 1e4]");
  require(learning_rate > 0.0, "train: learning rate must be positive");
  require(image_size >= 16 && image_size % (std::size_t{1} << network.depth) == 0,
          "train: image size must be >= 16 and divisible by 2^depth");
  require(network.in_channels == 2 && network.out_channels == 1, "train: network must map 2 channels to 1");
}

double projected_l1_loss(const Image& estimate, const Image& output, const Image& target,
                         Image* grad_output) {
  double loss = 0.0;
  for (std::size_t p = 0; p < target.size(); ++p) {
    const double z = estimate[p] + output[p];
    const double diff = std::max(z, 0.0) - target[p];
    loss += std::abs(diff);
    if (grad_output) {
      const double s = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
      // The projection passes gradient for z >= 0 so that a zero-initialized
      // head on a zero estimate still receives a signal.
      (*grad_output)[p] = z >= 0.0 ? s : 0.0;
    }
  }
  return loss;
}

namespace {

struct SampleState {
  Problem problem;
  const DataConsistency* dc = nullptr;
  Image x;
  Image r;
};

struct Normalized {
  Tensor input;
  Image estimate;
  Image target;
};

Normalized normalize(const SampleState& s, std::size_t stage) {
  const double a = stage == 0 ? alpha(s.problem.x_d) : alpha(s.x);
  const double inv = 1.0 / a;
  Normalized n;
  const Image r = inv * s.r;
  n.estimate = inv * s.x;
  n.input = stack({&r, &n.estimate});
  n.target = inv * s.problem.gt;
  return n;
}

std::vector<SampleState> build_samples(const TrainConfig& cfg, AcquisitionCache& cache,
                                       const PhantomSource& phantoms, std::size_t first, std::size_t count) {
  std::vector<SampleState> out;
  out.reserve(count);
  for (std::size_t k = first; k < first + count; ++k) {
    Rng rng(cfg.seed, k);
    const auto spokes = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(cfg.min_spokes), static_cast<std::int64_t>(cfg.max_spokes)));
    const double dr = sample_dynamic_range(rng, cfg.min_dr, cfg.max_dr);
    const auto acq = cache.get(spokes);
    SampleState s;
    s.problem = make_problem(*acq, phantoms(k), dr, rng);
    s.dc = &acq->dc(cfg.dc_mode);
    s.x = Image(cfg.image_size, cfg.image_size);
    s.r = s.problem.x_d;
    out.push_back(std::move(s));
  }
  return out;
}

void advance(std::vector<SampleState>& samples, const ImageUpdate& stage, std::size_t index) {
  for (auto& s : samples) {
    const double a = index == 0 ? alpha(s.problem.x_d) : alpha(s.x);
    s.x = positive_part(s.x + normalized_update(stage, s.r, s.x, a));
    s.r = s.dc->residual(s.problem.x_d, s.x);
  }
}

std::pair<double, double> mean_quality(const std::vector<SampleState>& samples, bool with_log) {
  if (samples.empty()) return {0.0, 0.0};
  double s = 0.0, l = 0.0;
  for (const auto& st : samples) {
    s += snr(st.x, st.problem.gt);
    if (with_log) l += logsnr(st.x, st.problem.gt, st.problem.dr).db;
  }
  const double n = static_cast<double>(samples.size());
  return {s / n, l / n};
}

}  // namespace

TrainResult train_series(const TrainConfig& cfg, const PhantomSource& phantoms, const TrainLogger& log) {
  cfg.validate();
  const auto say = [&](const std::string& msg) {
    if (log) log(msg);
  };
  AcquisitionCache cache(cfg.image_size, cfg.radius, cfg.dcf_iterations);
  std::vector<SampleState> train = build_samples(cfg, cache, phantoms, 0, cfg.samples);
  std::vector<SampleState> valid = build_samples(cfg, cache, phantoms, cfg.samples, cfg.validation_samples);
  require_data(!train.empty(), "train: empty dataset");

  TrainResult result;
  result.series.dc_mode = cfg.dc_mode;
  {
    double s = 0.0;
    for (const auto& v : valid) s += snr(v.problem.x_d, v.problem.gt);
    result.validation_mean_snr_backprojection = valid.empty() ? 0.0 : s / static_cast<double>(valid.size());
  }

  for (std::size_t stage = 0; stage < cfg.stages; ++stage) {
    UNet net(cfg.network);
    Rng init_rng(cfg.seed, 0xC0000000ull + stage);
    net.initialize(init_rng, true);
    Adam adam(net.num_parameters(), AdamConfig{.learning_rate = cfg.learning_rate});

    std::vector<Normalized> data;
    data.reserve(train.size());
    for (const auto& s : train) data.push_back(normalize(s, stage));

    StageReport report;
    report.stage = stage + 1;
    for (const auto& d : data) {
      const Image out = unstack(net.forward(d.input), 0);
      report.initial_loss += projected_l1_loss(d.estimate, out, d.target, nullptr);
    }
    report.initial_loss /= static_cast<double>(data.size());

    std::vector<std::size_t> order(data.size());
    std::vector<double> grads(net.num_parameters());
    UNet::Cache fwd_cache;
    const std::size_t h = cfg.image_size;
    Image grad_img(h, h);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      std::iota(order.begin(), order.end(), 0);
      Rng shuffle_rng(cfg.seed, 0xD0000000ull + stage * 100000 + epoch);
      for (std::size_t k = order.size(); k > 1; --k) {
        const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<std::int64_t>(k - 1)));
        std::swap(order[k - 1], order[j]);
      }
      double epoch_loss = 0.0;
      for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
        const std::size_t end = std::min(order.size(), start + cfg.batch_size);
        std::fill(grads.begin(), grads.end(), 0.0);
        for (std::size_t b = start; b < end; ++b) {
          const Normalized& d = data[order[b]];
          const Tensor out = net.forward(d.input, &fwd_cache);
          epoch_loss += projected_l1_loss(d.estimate, unstack(out, 0), d.target, &grad_img);
          Tensor g(1, h, h);
          std::copy(grad_img.data().begin(), grad_img.data().end(), g.data.begin());
          net.backward(fwd_cache, g, grads);
        }
        const double scale = 1.0 / static_cast<double>(end - start);
        for (auto& v : grads) v *= scale;
        adam.step(net.parameters(), grads);
      }
      epoch_loss /= static_cast<double>(order.size());
      if (!std::isfinite(epoch_loss)) throw NumericalError("train: loss diverged");
      report.epoch_losses.push_back(epoch_loss);
    }
    for (auto& p : net.parameters()) p = static_cast<float>(p);

    auto update = std::make_shared<NetworkUpdate>(std::move(net));
    advance(train, *update, stage);
    advance(valid, *update, stage);
    result.series.stages.push_back(update);
    report.train_mean_snr = mean_quality(train, false).first;
    std::tie(report.validation_mean_snr, report.validation_mean_logsnr) = mean_quality(valid, true);
    say("stage " + std::to_string(stage + 1) + ": loss " + std::to_string(report.initial_loss) + " -> " +
        std::to_string(report.epoch_losses.back()) + ", train SNR " + std::to_string(report.train_mean_snr) +
        " dB, validation SNR " + std::to_string(report.validation_mean_snr) + " dB");
    result.stages.push_back(std::move(report));
  }
  return result;
}

}  // namespace r2d2
