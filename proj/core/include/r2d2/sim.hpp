#pragma once

#include <cstdint>
#include <filesystem>

#include "r2d2/image.hpp"
#include "r2d2/nufft.hpp"
#include "r2d2/rng.hpp"

namespace r2d2 {

inline constexpr double kMinDynamicRange = 10.0;
inline constexpr double kMaxDynamicRange = 1e4;

struct MeasurementSet {
  ComplexVector y;
  double tau = 0.0;
  double dr = 0.0;
  std::size_t n_spokes = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// L and L_p are the spectral norms of Re{Phi^H D Phi} and Re{Phi^H D^2 Phi},
/// i.e. the squares of spectral_norm(plan, Once/Twice). With this choice the
/// back-projected noise std stays close to sigma = 1/DR.
struct NoiseOperatorNorms {
  double l = 0.0;
  double lp = 0.0;
  bool converged = false;
};

NoiseOperatorNorms noise_operator_norms(const NufftPlan& weighted_plan);

/// sqrt(2 L^2 / L_p). Multiply by sigma = 1/DR to obtain tau.
double noise_gain(const NufftPlan& weighted_plan);

/// tau = sqrt(2 L^2 / L_p) / dr.
double noise_std(const NufftPlan& weighted_plan, double dr);

/// y = Phi gt + n with n = tau/sqrt(2) (g1 + i g2), tau = noise_std(plan, dr).
MeasurementSet simulate(const NufftPlan& weighted_plan, const Image& gt, double dr, Rng& rng);

/// As above with a precomputed tau (e.g. cached per trajectory).
MeasurementSet simulate_with_tau(const NufftPlan& weighted_plan, const Image& gt, double dr,
                                 double tau, Rng& rng);

/// x_d = kappa Re{Phi^H D y}.
Image back_project(const NufftPlan& weighted_plan, std::span<const Complex> y);

/// Writes `path` (.r2d2cplx) plus a JSON sidecar `path + ".json"` holding
/// tau, n_spokes, dr and seed.
void write_measurement(const std::filesystem::path& path, const MeasurementSet& set,
                       std::size_t radius, std::size_t image_size);

struct MeasurementFile {
  MeasurementSet set;
  std::size_t radius = 0;
  std::size_t image_size = 0;
  bool has_sidecar = false;
};

/// Reads `path` and, when present, its sidecar. Without a sidecar only `y` is set.
MeasurementFile read_measurement(const std::filesystem::path& path);

}  // namespace r2d2
