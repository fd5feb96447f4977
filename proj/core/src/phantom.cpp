#include "r2d2/phantom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "r2d2/error.hpp"
#include "r2d2/rng.hpp"

namespace r2d2 {
namespace {

struct Ellipse {
  double intensity, a, b, x0, y0, phi_deg;
};

constexpr std::array<Ellipse, 10> kModifiedSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

void rasterize(Image& img, const Ellipse& e) {
  const double n = static_cast<double>(img.height());
  const double phi = e.phi_deg * std::numbers::pi / 180.0;
  const double c = std::cos(phi), s = std::sin(phi);
  for (std::size_t i = 0; i < img.height(); ++i) {
    const double y = (n - 1.0 - 2.0 * static_cast<double>(i)) / n;
    for (std::size_t j = 0; j < img.width(); ++j) {
      const double x = (2.0 * static_cast<double>(j) + 1.0 - n) / n;
      const double u = (x - e.x0) * c + (y - e.y0) * s;
      const double v = -(x - e.x0) * s + (y - e.y0) * c;
      if (u * u / (e.a * e.a) + v * v / (e.b * e.b) <= 1.0) img(i, j) += e.intensity;
    }
  }
}

}  // namespace

Image make_phantom(const PhantomSpec& spec) {
  require(spec.size >= 16, "make_phantom: size must be at least 16");
  Image img(spec.size, spec.size);
  if (spec.kind == PhantomKind::SheppLogan) {
    for (const auto& e : kModifiedSheppLogan) rasterize(img, e);
  } else {
    require(spec.min_ellipses >= 1 && spec.min_ellipses <= spec.max_ellipses,
            "make_phantom: invalid ellipse count range");
    require(spec.min_intensity > 0.0 && spec.min_intensity <= spec.max_intensity &&
                spec.max_intensity <= 1.0,
            "make_phantom: intensity range must lie in (0, 1]");
    Rng rng(spec.seed, 0);
    const auto count = rng.uniform_int(static_cast<std::int64_t>(spec.min_ellipses),
                                       static_cast<std::int64_t>(spec.max_ellipses));
    for (std::int64_t k = 0; k < count; ++k) {
      Ellipse e{};
      e.intensity = rng.uniform(spec.min_intensity, spec.max_intensity);
      e.a = rng.uniform(0.08, 0.5);
      e.b = rng.uniform(0.08, 0.5);
      e.x0 = rng.uniform(-0.45, 0.45);
      e.y0 = rng.uniform(-0.45, 0.45);
      e.phi_deg = rng.uniform(0.0, 180.0);
      rasterize(img, e);
    }
  }
  for (auto& v : img.data()) v = std::max(v, 0.0);
  const double peak = max_value(img);
  if (peak > 0.0) img *= 1.0 / peak;
  // Exact 1 at the brightest pixel regardless of rounding in the division.
  auto d = img.data();
  *std::max_element(d.begin(), d.end()) = 1.0;
  return img;
}

}  // namespace r2d2
