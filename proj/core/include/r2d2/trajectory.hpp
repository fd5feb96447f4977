#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace r2d2 {

/// Golden-angle increment between consecutive spokes, in degrees.
inline constexpr double kGoldenAngleDegrees = 111.25;

/// k-space location in radians per pixel; the band is [-pi, pi]^2.
struct KPoint {
  double kx = 0.0;
  double ky = 0.0;
};

/// Ordered k-space sample locations. Radial trajectories are stored spoke
/// by spoke, each spoke holding radii -R..R; `radius == 0` marks a generic
/// point cloud without spoke structure.
struct Trajectory {
  std::vector<KPoint> points;
  std::size_t n_spokes = 0;
  std::size_t radius = 0;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t samples_per_spoke() const noexcept { return 2 * radius + 1; }
  bool is_radial() const noexcept { return radius > 0; }
};

/// Spoke angle n * 111.25 degrees, reduced modulo 360 before conversion.
double spoke_angle(std::size_t spoke);

/// Golden-angle radial sampling: point (n, r) sits at (pi/R) * r * (cos a_n, sin a_n)
/// for r = -R..R.
Trajectory radial_trajectory(std::size_t n_spokes, std::size_t radius);

/// sqrt(n_pixels) / n_spokes.
double acceleration_factor(std::size_t n_spokes, std::size_t n_pixels);

/// Every frequency 2*pi*(u/h, v/w) with u in [-h/2, h/2), v in [-w/2, w/2).
Trajectory cartesian_trajectory(std::size_t h, std::size_t w);

// CSV with header "spoke,index,kx,ky"; floats printed with 17 significant digits.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

}  // namespace r2d2
