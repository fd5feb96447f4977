#include "r2d2/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "r2d2/error.hpp"

namespace r2d2 {

double spoke_angle(std::size_t spoke) {
  const double degrees = std::fmod(static_cast<double>(spoke) * kGoldenAngleDegrees, 360.0);
  return degrees * std::numbers::pi / 180.0;
}

Trajectory radial_trajectory(std::size_t n_spokes, std::size_t radius) {
  require(n_spokes >= 1, "radial_trajectory: need at least one spoke");
  require(radius >= 1, "radial_trajectory: radius must be positive");
  Trajectory traj;
  traj.n_spokes = n_spokes;
  traj.radius = radius;
  traj.points.reserve(n_spokes * traj.samples_per_spoke());
  const double scale = std::numbers::pi / static_cast<double>(radius);
  const auto extent = static_cast<long>(radius);
  for (std::size_t n = 0; n < n_spokes; ++n) {
    const double angle = spoke_angle(n);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (long r = -extent; r <= extent; ++r) {
      const double k = scale * static_cast<double>(r);
      traj.points.push_back({k * c, k * s});
    }
  }
  return traj;
}

double acceleration_factor(std::size_t n_spokes, std::size_t n_pixels) {
  require(n_spokes > 0 && n_pixels > 0, "acceleration_factor: inputs must be positive");
  return std::sqrt(static_cast<double>(n_pixels)) / static_cast<double>(n_spokes);
}

Trajectory cartesian_trajectory(std::size_t h, std::size_t w) {
  require(h > 0 && w > 0, "cartesian_trajectory: empty grid");
  Trajectory traj;
  traj.points.reserve(h * w);
  const auto hh = static_cast<long>(h);
  const auto ww = static_cast<long>(w);
  for (long u = -hh / 2; u < hh - hh / 2; ++u) {
    for (long v = -ww / 2; v < ww - ww / 2; ++v) {
      traj.points.push_back({2.0 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(w),
                             2.0 * std::numbers::pi * static_cast<double>(u) / static_cast<double>(h)});
    }
  }
  return traj;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path);
  require_data(static_cast<bool>(out), "cannot write " + path.string());
  out << "spoke,index,kx,ky\n";
  const std::size_t per_spoke = traj.is_radial() ? traj.samples_per_spoke() : traj.size();
  char line[128];
  for (std::size_t m = 0; m < traj.size(); ++m) {
    std::snprintf(line, sizeof line, "%zu,%zu,%.17g,%.17g\n", m / per_spoke, m % per_spoke,
                  traj.points[m].kx, traj.points[m].ky);
    out << line;
  }
  require_data(static_cast<bool>(out), "write failed for " + path.string());
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require_data(static_cast<bool>(in), "cannot open " + path.string());
  std::string line;
  require_data(std::getline(in, line) && line.rfind("spoke,index,kx,ky", 0) == 0,
               "trajectory CSV header must be spoke,index,kx,ky");
  Trajectory traj;
  std::size_t max_spoke = 0;
  std::size_t max_index = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t spoke = 0, index = 0;
    double kx = 0.0, ky = 0.0;
    if (std::sscanf(line.c_str(), "%zu,%zu,%lf,%lf", &spoke, &index, &kx, &ky) != 4) {
      throw DataError("malformed trajectory row: " + line);
    }
    require_data(std::isfinite(kx) && std::isfinite(ky), "non-finite trajectory coordinate");
    max_spoke = std::max(max_spoke, spoke);
    max_index = std::max(max_index, index);
    traj.points.push_back({kx, ky});
  }
  require_data(!traj.points.empty(), "trajectory CSV has no points");
  const std::size_t per_spoke = max_index + 1;
  if (per_spoke % 2 == 1 && per_spoke > 1 && (max_spoke + 1) * per_spoke == traj.size()) {
    traj.n_spokes = max_spoke + 1;
    traj.radius = (per_spoke - 1) / 2;
  }
  return traj;
}

}  // namespace r2d2
