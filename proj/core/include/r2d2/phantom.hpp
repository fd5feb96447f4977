#pragma once

#include <cstddef>
#include <cstdint>

#include "r2d2/image.hpp"

namespace r2d2 {

enum class PhantomKind { SheppLogan, RandomEllipses };

struct PhantomSpec {
  PhantomKind kind = PhantomKind::SheppLogan;
  std::size_t size = 32;
  std::size_t min_ellipses = 3;
  std::size_t max_ellipses = 8;
  double min_intensity = 0.05;
  double max_intensity = 1.0;
  std::uint64_t seed = 0;
};

/// Nonnegative square phantom normalized to a maximum of exactly 1.
/// Shepp-Logan uses the modified (Toft) intensities; random ellipses are
/// additive with parameters drawn from Rng(seed, 0).
Image make_phantom(const PhantomSpec& spec);

}  // namespace r2d2
