#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "r2d2/dcf.hpp"
#include "r2d2/error.hpp"
#include "r2d2/kaiser_bessel.hpp"
#include "r2d2/nufft.hpp"

namespace r2d2 {
namespace {

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

TEST(KaiserBessel, BetaAndNormalization) {
  EXPECT_NEAR(kb::optimal_beta(6, 2.0), std::numbers::pi * std::sqrt(36.0 / 4.0 * 2.25 - 0.8), 1e-14);
  const double beta = kb::optimal_beta(6, 2.0);
  EXPECT_DOUBLE_EQ(kb::kernel(0.0, 6, beta), 1.0);
  EXPECT_DOUBLE_EQ(kb::kernel(3.5, 6, beta), 0.0);
  // Midpoint-rule integral of the kernel equals its transform at zero.
  double integral = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) integral += kb::kernel(-3.0 + 6.0 * (i + 0.5) / n, 6, beta) * 6.0 / n;
  EXPECT_NEAR(integral, kb::fourier(0.0, 6, beta), 1e-8);
}

TEST(Nufft, ForwardMatchesDirectTransform) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const Trajectory t = test::random_trajectory(rng, 150);
    const NufftPlan plan(t, 16, 16);
    const Image x = test::random_image(rng, 16, 16);
    EXPECT_LT(test::rel_error(plan.forward(x), test::ndft_forward(t, x)), 1e-5);
  }
}

TEST(Nufft, AdjointMatchesDirectTransform) {
  Rng rng(11);
  const Trajectory t = radial_trajectory(12, 8);
  const NufftPlan plan(t, 16, 12);
  const ComplexVector y = test::random_complex(rng, t.size());
  EXPECT_LT(test::rel_error(plan.adjoint(y).data, test::ndft_adjoint(t, y, 16, 12).data), 1e-5);
}

TEST(Nufft, OnGridSamplesGiveAnExactDft) {
  Rng rng(12);
  const Trajectory t = cartesian_trajectory(16, 16);
  const NufftPlan plan(t, 16, 16);
  const Image x = test::random_image(rng, 16, 16);
  EXPECT_LT(test::rel_error(plan.forward(x), test::ndft_forward(t, x)), 1e-12);
}

TEST(Nufft, DotTest) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Trajectory t = test::random_trajectory(rng, 60);
    const NufftPlan plan(t, 8, 8);
    const Image x = test::random_image(rng, 8, 8);
    const ComplexVector y = test::random_complex(rng, t.size());
    const ComplexVector ax = plan.forward(x);
    const ComplexImage aty = plan.adjoint(y);
    ComplexVector xc(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) xc[p] = x[p];
    const Complex lhs = dot(ax, y);
    const Complex rhs = dot(xc, aty.data);
    EXPECT_LT(std::abs(lhs - rhs) / std::abs(lhs), 1e-10);
  }
}

TEST(Nufft, Linearity) {
  Rng rng(14);
  const NufftPlan plan(radial_trajectory(9, 8), 16, 16);
  const Image x = test::random_image(rng, 16, 16);
  const Image y = test::random_image(rng, 16, 16);
  const ComplexVector lhs = plan.forward(2.5 * x - 0.75 * y);
  const ComplexVector fx = plan.forward(x), fy = plan.forward(y);
  ComplexVector rhs(lhs.size());
  for (std::size_t m = 0; m < rhs.size(); ++m) rhs[m] = 2.5 * fx[m] - 0.75 * fy[m];
  EXPECT_LT(test::rel_error(lhs, rhs), 1e-12);
}

TEST(Nufft, RejectsBadInputs) {
  Trajectory t;
  t.points = {{3.2, 0.0}};
  EXPECT_THROW(NufftPlan(t, 8, 8), DataError);
  EXPECT_THROW(NufftPlan(radial_trajectory(4, 4), 7, 8), InvalidArgument);
  const NufftPlan plan(radial_trajectory(4, 4), 8, 8);
  EXPECT_THROW(plan.forward(Image(8, 6)), DataError);
  EXPECT_THROW(plan.adjoint(ComplexVector(3)), DataError);
  EXPECT_THROW(plan.with_weights(std::vector<double>(3, 1.0)), DataError);
  EXPECT_THROW(plan.with_weights(std::vector<double>(plan.num_points(), 0.0)), DataError);
}

TEST(Kappa, MatchesDirectTransformOracle) {
  const Trajectory t = radial_trajectory(10, 16);
  const NufftPlan raw(t, 16, 16);
  const NufftPlan weighted = attach_weights(raw, pipe_menon(raw));
  for (const NufftPlan* plan : {&raw, &weighted}) {
    ComplexVector y = test::ndft_forward(t, centered_dirac(16, 16));
    for (std::size_t m = 0; m < y.size(); ++m) y[m] *= plan->weights()[m];
    const Image back = test::ndft_adjoint(t, y, 16, 16).real();
    EXPECT_NEAR(plan->kappa() * max_value(back), 1.0, 1e-5);
  }
  EXPECT_NE(raw.kappa(), weighted.kappa());
}

TEST(Psf, PeakIsOneAtTheCentre) {
  Rng rng(15);
  for (int trial = 0; trial < 5; ++trial) {
    const auto ns = static_cast<std::size_t>(rng.uniform_int(4, 40));
    const NufftPlan raw(radial_trajectory(ns, 16), 16, 16);
    const Image h = compute_psf(attach_weights(raw, pipe_menon(raw)));
    EXPECT_NEAR(max_value(h), 1.0, 1e-15);
    EXPECT_NEAR(h(8, 8), 1.0, 1e-15);
  }
}

TEST(Psf, PointSymmetricForRadialSampling) {
  const NufftPlan raw(radial_trajectory(13, 16), 16, 16);
  const Image h = compute_psf(attach_weights(raw, pipe_menon(raw)));
  double worst = 0.0;
  for (std::size_t i = 1; i < 16; ++i) {
    for (std::size_t j = 1; j < 16; ++j) worst = std::max(worst, std::abs(h(i, j) - h(16 - i, 16 - j)));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Psf, FullCartesianSamplingGivesADelta) {
  const NufftPlan plan(cartesian_trajectory(16, 16), 16, 16);
  EXPECT_LT(norm_inf(compute_psf(plan) - centered_dirac(16, 16)), 1e-12);
}

TEST(SpectralNorm, CartesianMatchesDenseEigensolver) {
  const NufftPlan plan(cartesian_trajectory(8, 8), 8, 8);
  const SpectralNormResult r = spectral_norm(plan, Weighting::Once);
  EXPECT_TRUE(r.converged);
  const double oracle = std::sqrt(test::max_eigenvalue(test::dense_normal(plan, 1)));
  EXPECT_NEAR(oracle, 8.0, 1e-10);
  EXPECT_NEAR(r.value, oracle, 1e-4 * oracle);
}

TEST(SpectralNorm, WeightedRadialMatchesDenseEigensolver) {
  const NufftPlan raw(radial_trajectory(10, 16), 8, 8);
  const NufftPlan plan = attach_weights(raw, pipe_menon(raw));
  for (const Weighting w : {Weighting::Once, Weighting::Twice}) {
    const SpectralNormResult r = spectral_norm(plan, w);
    const double oracle = std::sqrt(test::max_eigenvalue(test::dense_normal(plan, static_cast<int>(w))));
    EXPECT_NEAR(r.value, oracle, 1e-4 * oracle);
    EXPECT_EQ(spectral_norm(plan, w).value, r.value);
  }
}

}  // namespace
}  // namespace r2d2
