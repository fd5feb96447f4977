#include "r2d2/kaiser_bessel.hpp"

#include <cmath>
#include <numbers>

namespace r2d2::kb {

double optimal_beta(int width, double sigma) {
  const double j = width;
  return std::numbers::pi * std::sqrt(j * j / (sigma * sigma) * (sigma - 0.5) * (sigma - 0.5) - 0.8);
}

double kernel(double s, int width, double beta) {
  const double u = 2.0 * s / width;
  if (std::abs(u) > 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - u * u)) / std::cyl_bessel_i(0.0, beta);
}

double fourier(double f, int width, double beta) {
  const double peak = std::cyl_bessel_i(0.0, beta);
  const double a = std::numbers::pi * width * f;
  const double z2 = beta * beta - a * a;
  if (z2 > 0.0) {
    const double z = std::sqrt(z2);
    return width * std::sinh(z) / z / peak;
  }
  if (z2 < 0.0) {
    const double z = std::sqrt(-z2);
    return width * std::sin(z) / z / peak;
  }
  return width / peak;
}

}  // namespace r2d2::kb
