#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "r2d2/fft.hpp"
#include "r2d2/image.hpp"
#include "r2d2/trajectory.hpp"

namespace r2d2 {

/// Non-uniform measurement operator Phi = U F Z: zero-padding onto a 2x
/// oversampled grid (with Kaiser-Bessel deapodization), FFT, and kernel
/// interpolation to the trajectory points.
///
/// Pixel (i, j) sits at centered coordinates (i - h/2, j - w/2), so
///   forward(x)_m ~= sum_{i,j} x(i,j) exp(-i (kx_m (j - w/2) + ky_m (i - h/2))).
///
/// A plan also carries density-compensation weights d (all ones until
/// attached) and the normalization kappa = 1 / max Re{Phi^H D Phi delta}.
/// The weighted adjoint Phi^H D is used for every back-projection.
/// Plans are immutable; copies share the interpolation tables.
class NufftPlan {
 public:
  static constexpr int kKernelWidth = 6;
  static constexpr int kAxisTaps = kKernelWidth + 1;
  static constexpr int kKernelTaps = kAxisTaps * kAxisTaps;
  static constexpr std::size_t kOversampling = 2;

  NufftPlan(const Trajectory& traj, std::size_t height, std::size_t width);

  std::size_t height() const noexcept;
  std::size_t width() const noexcept;
  std::size_t grid_height() const noexcept;
  std::size_t grid_width() const noexcept;
  std::size_t num_points() const noexcept;
  std::size_t num_pixels() const noexcept { return height() * width(); }
  double kernel_beta() const noexcept;
  const Trajectory& trajectory() const noexcept;
  /// Per-pixel deapodization factor applied before zero-padding.
  const Image& deapodization() const noexcept;

  double kappa() const noexcept { return kappa_; }
  std::span<const double> weights() const noexcept { return weights_; }
  bool has_unit_weights() const noexcept { return unit_weights_; }

  /// Grid indices and kernel weights of the (J+1) x (J+1) neighbourhood of point m.
  std::span<const std::int32_t> index_row(std::size_t m) const;
  std::span<const double> weight_row(std::size_t m) const;

  ComplexVector forward(const Image& x) const;
  /// Phi^H y, unweighted.
  ComplexImage adjoint(std::span<const Complex> y) const;
  /// Phi^H D y.
  ComplexImage weighted_adjoint(std::span<const Complex> y) const;
  /// Re{Phi^H D^power Phi x}; power 1 is the operator behind kappa and residuals.
  Image normal(const Image& x, int weight_power = 1) const;

  /// Interpolation-only operator G (oversampled grid -> points) and its
  /// adjoint, for real-valued data. No FFT, no deapodization.
  std::vector<double> interpolate(std::span<const double> grid) const;
  std::vector<double> spread(std::span<const double> values) const;

  /// Copy of this plan using weights d; kappa is recomputed.
  NufftPlan with_weights(std::vector<double> d) const;

 private:
  struct Tables;
  NufftPlan() = default;
  ComplexImage adjoint_scaled(std::span<const Complex> y, std::span<const double> scale) const;

  std::shared_ptr<const Tables> tables_;
  std::vector<double> weights_;
  bool unit_weights_ = true;
  double kappa_ = 0.0;
};

/// kappa = 1 / max Re{Phi^H D Phi delta} for the centered Dirac delta.
double compute_kappa(const NufftPlan& plan);

/// h = kappa Re{Phi^H D Phi delta}; peak value 1.
Image compute_psf(const NufftPlan& plan);

enum class Weighting { Once = 1, Twice = 2 };

struct SpectralNormResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration on x -> Re{Phi^H D^W Phi x} from a fixed seeded start.
/// Returns the square root of the dominant eigenvalue.
SpectralNormResult spectral_norm(const NufftPlan& plan, Weighting weighting,
                                 int max_iterations = 500, double tolerance = 1e-6);

}  // namespace r2d2
