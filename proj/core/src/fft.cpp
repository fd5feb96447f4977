#include "r2d2/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "r2d2/error.hpp"

namespace r2d2 {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Fft2d::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

Fft2d::Fft2d(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  require(rows > 0 && cols > 0, "Fft2d: empty shape");
  auto plans = std::make_shared<Plans>();
  {
    std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE keeps the chosen algorithm (and so the rounding) identical
    // from run to run; FFTW_UNALIGNED allows executing on caller buffers.
    auto* scratch = fftw_alloc_complex(rows * cols);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->fwd = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), scratch, scratch,
                                  FFTW_FORWARD, flags);
    plans->bwd = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), scratch, scratch,
                                  FFTW_BACKWARD, flags);
    fftw_free(scratch);
  }
  if (!plans->fwd || !plans->bwd) throw NumericalError("FFTW failed to create a plan");
  plans_ = std::move(plans);
}

void Fft2d::forward(std::span<Complex> data) const {
  require(data.size() == rows_ * cols_, "Fft2d: buffer size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->fwd, p, p);
}

void Fft2d::backward(std::span<Complex> data) const {
  require(data.size() == rows_ * cols_, "Fft2d: buffer size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->bwd, p, p);
}

const char* fft_backend_version() { return fftw_version; }

}  // namespace r2d2
