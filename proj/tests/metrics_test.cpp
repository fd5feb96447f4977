#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "r2d2/error.hpp"
#include "r2d2/metrics.hpp"
#include "r2d2/phantom.hpp"

namespace r2d2 {
namespace {

TEST(Snr, ReferenceValues) {
  const Image gt = make_phantom({.size = 16});
  EXPECT_NEAR(snr(Image(16, 16), gt), 0.0, 1e-12);
  EXPECT_NEAR(snr(0.9 * gt, gt), 20.0, 1e-10);
  EXPECT_EQ(snr(gt, gt), kPerfectSnr);
  EXPECT_TRUE(std::isinf(kPerfectSnr));
  EXPECT_THROW(snr(gt, Image(16, 16)), DataError);
  EXPECT_THROW(snr(Image(8, 8), gt), DataError);
}

TEST(Snr, InvariantUnderJointScaling) {
  Rng rng(1);
  const Image gt = test::random_image(rng, 8, 8);
  const Image x = test::random_image(rng, 8, 8);
  EXPECT_NEAR(snr(3.7 * x, 3.7 * gt), snr(x, gt), 1e-12);
}

TEST(Rlog, MapsZeroToZeroAndOneToLogBase) {
  const Image x(1, 2, {0.0, 1.0});
  const Image y = rlog(x, 100.0);
  EXPECT_EQ(y[0], 0.0);
  EXPECT_NEAR(y[1], std::log(101.0) / std::log(100.0), 1e-15);
  bool clamped = false;
  (void)rlog(Image(1, 1, -0.5), 100.0, &clamped);
  EXPECT_TRUE(clamped);
  EXPECT_THROW(rlog(x, 1.0), InvalidArgument);
  EXPECT_THROW(rlog(x, 0.0), InvalidArgument);
}

TEST(LogSnr, ReferenceValues) {
  const Image gt = make_phantom({.size = 16});
  EXPECT_NEAR(logsnr(Image(16, 16), gt, 100.0).db, 0.0, 1e-12);
  EXPECT_EQ(logsnr(gt, gt, 100.0).db, kPerfectSnr);
  EXPECT_FALSE(logsnr(gt, gt, 100.0).clamped);
  EXPECT_TRUE(logsnr(gt - Image(16, 16, 0.5), gt, 100.0).clamped);
}

TEST(LogSnr, PenalizesMissingFaintFeatures) {
  Image gt(8, 8);
  Image x(8, 8);
  for (std::size_t j = 0; j < 4; ++j) {
    gt(2, j) = 1.0;
    x(2, j) = 1.0;
    gt(5, j) = 1e-2;
  }
  const double linear = snr(x, gt);
  const double log = logsnr(x, gt, 100.0).db;
  // Linear: ||gt|| / ||gt - x|| = sqrt(1 + 1e-4) / 1e-2.
  EXPECT_NEAR(linear, 20.0 * std::log10(std::sqrt(1.0 + 1e-4) / 1e-2), 1e-10);
  // Log domain with a = 100: bright pixels map to log_100(101), faint ones to log_100(2).
  const double bright = std::log(101.0) / std::log(100.0);
  const double faint = std::log(2.0) / std::log(100.0);
  EXPECT_NEAR(log, 20.0 * std::log10(std::hypot(bright, faint) / faint), 1e-10);
  EXPECT_LT(log, linear);
}

TEST(LogSnr, ApproachesSnrForSmallBase) {
  Rng rng(2);
  Image gt(16, 16), x(16, 16);
  for (std::size_t k = 0; k < gt.size(); ++k) {
    gt[k] = rng.uniform(0.1, 1.0);
    x[k] = gt[k] * rng.uniform(0.8, 1.2);
  }
  EXPECT_NEAR(logsnr(x, gt, 1e-6).db, snr(x, gt), 0.01);
}

TEST(AccelerationRatio, IdenticalCurvesGiveOne) {
  const SnrCurve c{{2.0, 30.0}, {4.0, 22.0}, {8.0, 15.0}, {16.0, 9.0}};
  for (double target : {29.0, 22.0, 17.5, 10.0}) EXPECT_EQ(acceleration_ratio(c, c, target), 1.0);
}

TEST(AccelerationRatio, DoubledAfGivesTwo) {
  const SnrCurve b{{2.0, 30.0}, {4.0, 22.0}, {8.0, 15.0}, {16.0, 9.0}};
  SnrCurve a = b;
  for (auto& p : a) p.af *= 2.0;
  for (double target : {29.0, 22.0, 17.5, 10.0}) EXPECT_EQ(acceleration_ratio(a, b, target), 2.0);
}

TEST(AccelerationRatio, HandComputedInterpolation) {
  // At 20 dB: curve a crosses between (5, 24) and (10, 18): AF = 5 + 4 * 5 / 6 = 25/3.
  // Curve b crosses between (2, 22) and (6, 14): AF = 2 + 2 * 4 / 8 = 3.
  const SnrCurve a{{5.0, 24.0}, {10.0, 18.0}, {20.0, 12.0}};
  const SnrCurve b{{2.0, 22.0}, {6.0, 14.0}, {12.0, 8.0}};
  EXPECT_EQ(af_at_snr(a, 20.0), 25.0 / 3.0);
  EXPECT_EQ(af_at_snr(b, 20.0), 3.0);
  EXPECT_EQ(acceleration_ratio(a, b, 20.0), (25.0 / 3.0) / 3.0);
  EXPECT_EQ(af_at_snr(a, 18.0), 10.0);
}

TEST(AccelerationRatio, RejectsTargetsOutsideTheCurve) {
  const SnrCurve c{{2.0, 30.0}, {4.0, 22.0}};
  EXPECT_THROW(af_at_snr(c, 31.0), InvalidArgument);
  EXPECT_THROW(af_at_snr(c, 10.0), InvalidArgument);
  EXPECT_THROW(af_at_snr(SnrCurve{{4.0, 22.0}, {2.0, 30.0}}, 25.0), InvalidArgument);
  EXPECT_THROW(af_at_snr(SnrCurve{{4.0, 22.0}}, 22.0), InvalidArgument);
}

TEST(EvalReport, AggregatesAreArithmeticMeans) {
  EvalReport report;
  Rng rng(3);
  for (std::size_t spokes : {20, 10}) {
    for (std::size_t g = 0; g < 5; ++g) {
      ProblemResult p;
      p.gt_index = g;
      p.n_spokes = spokes;
      p.af = 4.0 / static_cast<double>(spokes);
      p.snr_db = rng.uniform(0.0, 30.0);
      p.logsnr_db = rng.uniform(0.0, 30.0);
      p.trace_snr = {rng.uniform(), rng.uniform()};
      report.problems.push_back(p);
    }
  }
  const auto agg = report.aggregate();
  ASSERT_EQ(agg.size(), 2u);
  EXPECT_EQ(agg[0].n_spokes, 10u);
  for (const auto& g : agg) {
    double s = 0.0, l = 0.0;
    for (const auto& p : report.problems) {
      if (p.n_spokes != g.n_spokes) continue;
      s += p.snr_db;
      l += p.logsnr_db;
    }
    EXPECT_EQ(g.n_problems, 5u);
    EXPECT_NEAR(g.mean_snr, s / 5.0, 1e-12);
    EXPECT_NEAR(g.mean_logsnr, l / 5.0, 1e-12);
  }
  double t1 = 0.0;
  for (const auto& p : report.problems) t1 += p.trace_snr[1];
  EXPECT_NEAR(report.mean_trace_snr()[1], t1 / 10.0, 1e-12);

  const std::string csv = report.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n_spokes,af,mean_snr,mean_logsnr,n_problems");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

}  // namespace
}  // namespace r2d2
