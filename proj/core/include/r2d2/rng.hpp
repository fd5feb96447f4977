#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace r2d2 {

/// Philox4x32-10 block for a 128-bit counter and 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based generator. The (seed, stream) pair fully determines the
/// sequence; distinct streams are independent, so parallel work draws from
/// one stream per sample. Single owner, not thread safe.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller; platform independent up to libm rounding.
  double gaussian();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> block_{};
  int used_ = 2;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> standard_gaussian(Rng& rng, std::size_t count);

}  // namespace r2d2
