#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "oracles.hpp"
#include "r2d2/error.hpp"
#include "r2d2/trajectory.hpp"

namespace r2d2 {
namespace {

TEST(Trajectory, GoldenAngleIncrements) {
  EXPECT_DOUBLE_EQ(spoke_angle(0), 0.0);
  EXPECT_NEAR(spoke_angle(1), 111.25 * std::numbers::pi / 180.0, 1e-15);
  // 4 * 111.25 = 445 = 360 + 85
  EXPECT_NEAR(spoke_angle(4), 85.0 * std::numbers::pi / 180.0, 1e-15);
}

TEST(Trajectory, RadialLayout) {
  const Trajectory t = radial_trajectory(10, 16);
  EXPECT_EQ(t.size(), 330u);
  EXPECT_EQ(t.samples_per_spoke(), 33u);
  EXPECT_TRUE(t.is_radial());
  // Spoke ends reach the band edge; the centre sample is k = 0.
  EXPECT_NEAR(std::hypot(t.points[0].kx, t.points[0].ky), std::numbers::pi, 1e-15);
  EXPECT_DOUBLE_EQ(std::hypot(t.points[16].kx, t.points[16].ky), 0.0);
  const double a = spoke_angle(3);
  const KPoint p = t.points[3 * 33 + 16 + 8];
  EXPECT_NEAR(p.kx, std::numbers::pi * 0.5 * std::cos(a), 1e-15);
  EXPECT_NEAR(p.ky, std::numbers::pi * 0.5 * std::sin(a), 1e-15);
  EXPECT_THROW(radial_trajectory(0, 16), InvalidArgument);
  EXPECT_THROW(radial_trajectory(4, 0), InvalidArgument);
}

TEST(Trajectory, AccelerationFactor) {
  EXPECT_DOUBLE_EQ(acceleration_factor(10, 320 * 320), 32.0);
  EXPECT_DOUBLE_EQ(acceleration_factor(80, 32 * 32), 0.4);
}

TEST(Trajectory, CartesianCoversTheGrid) {
  const Trajectory t = cartesian_trajectory(4, 6);
  EXPECT_EQ(t.size(), 24u);
  EXPECT_FALSE(t.is_radial());
  EXPECT_DOUBLE_EQ(t.points.front().kx, -std::numbers::pi);
  EXPECT_DOUBLE_EQ(t.points.front().ky, -std::numbers::pi);
}

TEST(Trajectory, CsvRoundTripIsExact) {
  test::TempDir dir("traj_csv");
  const Trajectory t = radial_trajectory(7, 5);
  write_trajectory_csv(dir / "t.csv", t);
  const Trajectory back = read_trajectory_csv(dir / "t.csv");
  ASSERT_EQ(back.size(), t.size());
  EXPECT_EQ(back.n_spokes, 7u);
  EXPECT_EQ(back.radius, 5u);
  for (std::size_t m = 0; m < t.size(); ++m) {
    EXPECT_EQ(back.points[m].kx, t.points[m].kx);
    EXPECT_EQ(back.points[m].ky, t.points[m].ky);
  }
}

TEST(Trajectory, CsvRejectsGarbage) {
  test::TempDir dir("traj_bad");
  {
    std::ofstream out(dir / "a.csv");
    out << "x,y\n1,2\n";
  }
  EXPECT_THROW(read_trajectory_csv(dir / "a.csv"), DataError);
  {
    std::ofstream out(dir / "b.csv");
    out << "spoke,index,kx,ky\n0,0,abc,1\n";
  }
  EXPECT_THROW(read_trajectory_csv(dir / "b.csv"), DataError);
}

}  // namespace
}  // namespace r2d2
