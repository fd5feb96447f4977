#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "r2d2/engine.hpp"
#include "r2d2/error.hpp"
#include "r2d2/metrics.hpp"
#include "r2d2/phantom.hpp"
#include "r2d2/problems.hpp"
#include "r2d2/sim.hpp"
#include "r2d2/training.hpp"

namespace r2d2 {
namespace {

class ZeroUpdate final : public ImageUpdate {
 public:
  Image apply(const Image& r, const Image&) const override { return Image(r.height(), r.width()); }
  std::string kind() const override { return "zero"; }
};

// Records what the wrapper feeds the model.
class Recorder final : public ImageUpdate {
 public:
  mutable Image seen_r, seen_x;
  Image apply(const Image& r, const Image& x) const override {
    seen_r = r;
    seen_x = x;
    return Image(r.height(), r.width(), 1.0);
  }
  std::string kind() const override { return "recorder"; }
};

Image noiseless_xd(const Acquisition& acq, const Image& gt) {
  return back_project(acq.plan, acq.plan.forward(gt));
}

ModelSeries network_series(std::size_t stages, std::uint64_t seed) {
  ModelSeries s;
  for (std::size_t i = 0; i < stages; ++i) {
    UNet net;
    Rng rng(seed, i);
    net.initialize(rng, false);
    for (auto& v : net.parameters()) v = static_cast<float>(v * 0.1);
    s.stages.push_back(std::make_shared<NetworkUpdate>(std::move(net)));
  }
  return s;
}

TEST(Alpha, MeanWithGuard) {
  EXPECT_DOUBLE_EQ(alpha(Image(4, 4, 0.375)), 0.375);
  EXPECT_EQ(alpha(Image(4, 4)), kAlphaGuard);
  EXPECT_EQ(alpha(Image(4, 4, -1.0)), kAlphaGuard);
}

TEST(Alpha, OfADiracBackProjectionIsThePsfMean) {
  const Acquisition acq = make_acquisition(12, 16);
  const Image xd = noiseless_xd(acq, centered_dirac(16, 16));
  EXPECT_NEAR(alpha(xd), mean(compute_psf(acq.plan)), 1e-15);
}

TEST(NormalizedUpdate, ScalesBothChannelsAndTheOutput) {
  Rng rng(1);
  const Image r = test::random_image(rng, 8, 8);
  const Image x = test::random_image(rng, 8, 8);
  Recorder rec;
  const Image out = normalized_update(rec, r, x, 0.25);
  EXPECT_EQ(rec.seen_r, 4.0 * r);
  EXPECT_EQ(rec.seen_x, 4.0 * x);
  EXPECT_EQ(out, Image(8, 8, 0.25));
}

TEST(NormalizedUpdate, LinearModelIsEquivariant) {
  Rng rng(2);
  const Image r = test::random_image(rng, 8, 8);
  const Image x = test::random_image(rng, 8, 8);
  const GradientStep g(0.7);
  const double c = 4.0;  // power of two: the identity holds bit for bit
  EXPECT_EQ(normalized_update(g, c * r, c * x, c * 0.3), c * normalized_update(g, r, x, 0.3));
}

TEST(Reconstruct, ZeroModelsKeepTheBackProjectionAsResidual) {
  const Acquisition acq = make_acquisition(16, 16);
  const Image xd = noiseless_xd(acq, make_phantom({.size = 16}));
  ModelSeries s;
  s.stages.assign(4, std::make_shared<ZeroUpdate>());
  const Reconstruction rec = reconstruct(s, xd, acq.exact);
  EXPECT_EQ(norm_inf(rec.estimate), 0.0);
  ASSERT_EQ(rec.trace.iterates.size(), 5u);
  ASSERT_EQ(rec.trace.residual_norms.size(), 4u);
  ASSERT_EQ(rec.trace.alphas.size(), 4u);
  for (double n : rec.trace.residual_norms) EXPECT_EQ(n, norm2(xd));
}

TEST(Reconstruct, SingleStageIsEndToEndLearning) {
  const Acquisition acq = make_acquisition(16, 16);
  const Image xd = noiseless_xd(acq, make_phantom({.size = 16}));
  const ModelSeries s = network_series(1, 3);
  const auto& net = static_cast<const NetworkUpdate&>(*s.stages[0]).network();
  const double a = mean(xd);
  const Image expected = positive_part(a * net.forward((1.0 / a) * xd, Image(16, 16)));
  EXPECT_EQ(reconstruct(s, xd, acq.exact).estimate, expected);
}

TEST(Reconstruct, IteratesStayNonnegative) {
  const Acquisition acq = make_acquisition(12, 16);
  Rng rng(4);
  const Problem p = make_problem(acq, make_phantom({.size = 16}), 30.0, rng);
  const Reconstruction rec = reconstruct(network_series(3, 5), p.x_d, acq.exact);
  for (const Image& x : rec.trace.iterates) EXPECT_GE(min_value(x), 0.0);
}

TEST(Reconstruct, ZeroStepFreezesTheIterates) {
  const Acquisition acq = make_acquisition(16, 16);
  const Image xd = noiseless_xd(acq, make_phantom({.size = 16}));
  const Reconstruction rec = reconstruct(gradient_step_series(0.0, 3), xd, acq.exact);
  for (const Image& x : rec.trace.iterates) EXPECT_EQ(norm_inf(x), 0.0);
}

TEST(Reconstruct, CartesianUnitStepReturnsTheBackProjection) {
  const NufftPlan plan(cartesian_trajectory(16, 16), 16, 16);
  const DataConsistency dc = DataConsistency::make(DcMode::Exact, plan);
  const Image gt = make_phantom({.size = 16});
  const Image xd = back_project(plan, plan.forward(gt));
  const Image x1 = reconstruct(gradient_step_series(1.0, 1), xd, dc).estimate;
  EXPECT_LT(norm_inf(x1 - positive_part(xd)), 1e-14);
  EXPECT_LT(norm_inf(x1 - gt), 1e-10);
}

TEST(Reconstruct, LandweberResidualDecreasesAndSnrRises) {
  const Acquisition acq = make_acquisition(64, 16);
  const Image gt = make_phantom({.size = 16});
  const Image xd = noiseless_xd(acq, gt);
  const Reconstruction rec = reconstruct(gradient_step_series(1.0, 10), xd, acq.exact);
  const auto& res = rec.trace.residual_norms;
  for (std::size_t i = 1; i < res.size(); ++i) EXPECT_LT(res[i], res[i - 1]) << i;
  EXPECT_GT(snr(rec.trace.iterates[8], gt), snr(rec.trace.iterates[1], gt));
}

TEST(Reconstruct, RejectsMismatchedModeAndDimensions) {
  const Acquisition acq = make_acquisition(8, 16);
  const Image xd(16, 16, 0.1);
  EXPECT_THROW(reconstruct(gradient_step_series(1.0, 1, DcMode::Fft), xd, acq.exact), InvalidArgument);
  EXPECT_THROW(reconstruct(gradient_step_series(1.0, 1), Image(8, 8), acq.exact), DataError);
  EXPECT_THROW(baseline_gradient_step(2.0), InvalidArgument);
  EXPECT_THROW(baseline_gradient_step(-0.1), InvalidArgument);
}

TEST(Series, SaveLoadReproducesReconstructions) {
  test::TempDir dir("series");
  const Acquisition acq = make_acquisition(12, 16);
  Rng rng(6);
  const Problem p = make_problem(acq, make_phantom({.size = 16}), 100.0, rng);
  ModelSeries s = network_series(2, 7);
  s.dc_mode = DcMode::Fft;
  save_series(dir / "nets", s, {{1.0, 0.5}, {0.4}});
  const ModelSeries back = load_series(dir / "nets");
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(back.dc_mode, DcMode::Fft);
  EXPECT_EQ(reconstruct(back, p.x_d, acq.fft).estimate, reconstruct(s, p.x_d, acq.fft).estimate);

  save_series(dir / "gd", gradient_step_series(0.5, 3));
  const ModelSeries gd = load_series(dir / "gd");
  ASSERT_EQ(gd.size(), 3u);
  EXPECT_EQ(static_cast<const GradientStep&>(*gd.stages[2]).gamma(), 0.5);
  EXPECT_THROW(load_series(dir / "missing"), DataError);
}

TEST(Training, InitialLossIsTheNormalizedTargetNorm) {
  TrainConfig cfg;
  cfg.image_size = 16;
  cfg.samples = 1;
  cfg.validation_samples = 0;
  cfg.min_spokes = cfg.max_spokes = 12;
  cfg.stages = 1;
  cfg.epochs = 1;
  cfg.batch_size = 1;
  cfg.seed = 11;
  const PhantomSource source = random_ellipse_source(3, 16);
  const TrainResult result = train_series(cfg, source);

  // Rebuild the single training problem the way the trainer draws it.
  Rng rng(cfg.seed, 0);
  (void)rng.uniform_int(12, 12);
  const double dr = sample_dynamic_range(rng, cfg.min_dr, cfg.max_dr);
  const Problem p = make_problem(make_acquisition(12, 16), source(0), dr, rng);
  double l1 = 0.0;
  for (double v : p.gt.values()) l1 += std::abs(v / alpha(p.x_d));
  ASSERT_EQ(result.stages.size(), 1u);
  EXPECT_NEAR(result.stages[0].initial_loss, l1, 1e-9 * l1);
  EXPECT_EQ(result.series.size(), 1u);
}

TEST(Training, RejectsBadConfigs) {
  TrainConfig cfg;
  cfg.samples = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.min_dr = 1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.image_size = 30;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.max_spokes = 1000;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

}  // namespace
}  // namespace r2d2
