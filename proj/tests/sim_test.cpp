#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "r2d2/dcf.hpp"
#include "r2d2/error.hpp"
#include "r2d2/metrics.hpp"
#include "r2d2/phantom.hpp"
#include "r2d2/sim.hpp"

namespace r2d2 {
namespace {

NufftPlan weighted(std::size_t spokes, std::size_t radius, std::size_t size) {
  const NufftPlan raw(radial_trajectory(spokes, radius), size, size);
  return attach_weights(raw, pipe_menon(raw));
}

double rms_noise(const NufftPlan& plan, const MeasurementSet& set, const Image& gt) {
  const ComplexVector clean = plan.forward(gt);
  double s = 0.0;
  for (std::size_t m = 0; m < clean.size(); ++m) s += std::norm(set.y[m] - clean[m]);
  return std::sqrt(s / static_cast<double>(clean.size()));
}

TEST(Phantom, SheppLoganIsNormalizedAndRepeatable) {
  PhantomSpec spec;
  const Image a = make_phantom(spec);
  EXPECT_EQ(a, make_phantom(spec));
  EXPECT_EQ(max_value(a), 1.0);
  EXPECT_GE(min_value(a), 0.0);
  std::size_t nonzero = 0;
  for (double v : a.values()) nonzero += v > 0.0;
  // Measured once on the generator and frozen.
  EXPECT_DOUBLE_EQ(static_cast<double>(nonzero) / static_cast<double>(a.size()), 0.421875);
}

TEST(Phantom, RandomEllipsesDependOnTheSeed) {
  PhantomSpec spec{.kind = PhantomKind::RandomEllipses, .size = 32, .seed = 5};
  const Image a = make_phantom(spec);
  EXPECT_EQ(a, make_phantom(spec));
  EXPECT_EQ(max_value(a), 1.0);
  EXPECT_GE(min_value(a), 0.0);
  spec.seed = 6;
  EXPECT_NE(a, make_phantom(spec));
  spec.size = 8;
  EXPECT_THROW(make_phantom(spec), InvalidArgument);
}

TEST(NoiseModel, TauScalesInverselyWithDynamicRange) {
  const NufftPlan plan = weighted(10, 16, 16);
  const double gain = noise_gain(plan);
  EXPECT_DOUBLE_EQ(noise_std(plan, 100.0), gain / 100.0);
  EXPECT_NEAR(noise_std(plan, 10.0) / noise_std(plan, 1e4), 1000.0, 1e-9);
  EXPECT_NEAR(noise_std(plan, 200.0) * 2.0, noise_std(plan, 100.0), 1e-15);
  EXPECT_THROW(noise_std(plan, 5.0), InvalidArgument);
  EXPECT_THROW(noise_std(plan, std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST(NoiseModel, GainMatchesDenseOperatorOracle) {
  const NufftPlan plan = weighted(10, 16, 8);
  const double l = test::max_eigenvalue(test::dense_normal(plan, 1));
  const double lp = test::max_eigenvalue(test::dense_normal(plan, 2));
  const double oracle = std::sqrt(2.0 * l * l / lp);
  EXPECT_NEAR(noise_gain(plan), oracle, 1e-3 * oracle);
  EXPECT_TRUE(noise_operator_norms(plan).converged);
}

TEST(Simulate, EmpiricalNoiseMatchesTau) {
  const NufftPlan plan = weighted(160, 32, 32);
  ASSERT_GE(plan.num_points(), 10000u);
  const Image gt = make_phantom({.size = 32});
  Rng rng(21);
  const MeasurementSet set = simulate(plan, gt, 1e4, rng);
  EXPECT_NEAR(rms_noise(plan, set, gt) / set.tau, 1.0, 0.05);

  Rng rng0(22);
  const Image zero(32, 32);
  const MeasurementSet pure = simulate(plan, zero, 50.0, rng0);
  EXPECT_NEAR(rms_noise(plan, pure, zero) / pure.tau, 1.0, 0.05);
}

TEST(Simulate, SeedDeterminismAndMetadata) {
  const NufftPlan plan = weighted(8, 16, 16);
  const Image gt = make_phantom({.size = 16});
  Rng a(5, 2), b(5, 2);
  const MeasurementSet s1 = simulate(plan, gt, 300.0, a);
  const MeasurementSet s2 = simulate(plan, gt, 300.0, b);
  EXPECT_EQ(s1.y, s2.y);
  EXPECT_EQ(s1.n_spokes, 8u);
  EXPECT_EQ(s1.dr, 300.0);
  EXPECT_EQ(s1.seed, 5u);
  EXPECT_EQ(s1.stream, 2u);
}

TEST(Simulate, RejectsInvalidGroundTruth) {
  const NufftPlan plan = weighted(8, 16, 16);
  Rng rng(1);
  EXPECT_THROW(simulate(plan, Image(16, 16, 2.0), 100.0, rng), DataError);
  EXPECT_THROW(simulate(plan, Image(16, 16, -0.5), 100.0, rng), DataError);
  EXPECT_THROW(simulate(plan, Image(8, 8), 100.0, rng), DataError);
  EXPECT_THROW(simulate(plan, Image(16, 16), 1e5, rng), InvalidArgument);
}

TEST(BackProjection, OfADiracIsThePsf) {
  const NufftPlan plan = weighted(12, 16, 16);
  const Image xd = back_project(plan, plan.forward(centered_dirac(16, 16)));
  EXPECT_LT(norm_inf(xd - compute_psf(plan)), 1e-15);
  EXPECT_EQ(norm_inf(back_project(plan, ComplexVector(plan.num_points()))), 0.0);
}

TEST(BackProjection, DenserSamplingImprovesSnr) {
  const Image gt = make_phantom({.size = 16});
  const NufftPlan dense = weighted(64, 16, 16);
  const NufftPlan sparse = weighted(8, 16, 16);
  const double snr_dense = snr(back_project(dense, dense.forward(gt)), gt);
  const double snr_sparse = snr(back_project(sparse, sparse.forward(gt)), gt);
  // Measured once and frozen.
  EXPECT_NEAR(snr_dense, 8.39248, 1e-4);
  EXPECT_NEAR(snr_sparse, -0.358001, 1e-4);
  EXPECT_GT(snr_dense, snr_sparse);
}

TEST(BackProjection, ImageNoiseStaysNearSigma) {
  for (const std::size_t spokes : {8, 32, 64}) {
    const NufftPlan plan = weighted(spokes, 32, 32);
    Rng rng(30 + spokes);
    const double dr = 100.0;
    double s = 0.0;
    std::size_t n = 0;
    for (int k = 0; k < 10; ++k) {
      const MeasurementSet set = simulate(plan, Image(32, 32), dr, rng);
      const Image xd = back_project(plan, set.y);
      for (double v : xd.values()) s += v * v;
      n += xd.size();
    }
    const double ratio = std::sqrt(s / static_cast<double>(n)) * dr;
    EXPECT_GT(ratio, 0.5) << spokes;
    EXPECT_LT(ratio, 2.0) << spokes;
  }
}

TEST(Measurement, FileRoundTrip) {
  test::TempDir dir("sim_meas");
  const NufftPlan plan = weighted(6, 8, 16);
  Rng rng(9, 1);
  const MeasurementSet set = simulate(plan, make_phantom({.size = 16}), 1000.0, rng);
  write_measurement(dir / "m.r2d2cplx", set, 8, 16);
  const MeasurementFile back = read_measurement(dir / "m.r2d2cplx");
  ASSERT_TRUE(back.has_sidecar);
  EXPECT_EQ(back.set.tau, set.tau);
  EXPECT_EQ(back.set.dr, 1000.0);
  EXPECT_EQ(back.set.n_spokes, 6u);
  EXPECT_EQ(back.set.seed, 9u);
  EXPECT_EQ(back.set.stream, 1u);
  EXPECT_EQ(back.radius, 8u);
  EXPECT_EQ(back.image_size, 16u);
  EXPECT_LT(test::rel_error(back.set.y, set.y), 1e-6);
}

}  // namespace
}  // namespace r2d2
