#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "r2d2/image.hpp"

namespace r2d2 {

/// In-place 2D complex FFT of a fixed row-major shape. Both directions are
/// unnormalized: forward uses exp(-i...), backward exp(+i...). Execution is
/// thread safe; the planner is serialized internally.
class Fft2d {
 public:
  Fft2d(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  void forward(std::span<Complex> data) const;
  void backward(std::span<Complex> data) const;

 private:
  struct Plans;
  std::size_t rows_;
  std::size_t cols_;
  std::shared_ptr<const Plans> plans_;
};

/// Library version string of the FFT backend.
const char* fft_backend_version();

}  // namespace r2d2
