#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "r2d2/image.hpp"
#include "r2d2/nufft.hpp"
#include "r2d2/residual.hpp"
#include "r2d2/rng.hpp"

namespace r2d2 {

/// Everything fixed by a spoke count: weighted plan, noise gain
/// sqrt(2 L^2 / L_p), and both data-consistency operators.
struct Acquisition {
  std::size_t n_spokes;
  NufftPlan plan;
  double noise_gain;
  DataConsistency exact;
  DataConsistency fft;

  const DataConsistency& dc(DcMode mode) const { return mode == DcMode::Exact ? exact : fft; }
};

/// Radial plan with Pipe-Menon weights attached. `radius` 0 means image_size.
Acquisition make_acquisition(std::size_t n_spokes, std::size_t image_size, std::size_t radius = 0,
                             int dcf_iterations = 10);

/// Thread-safe memo of acquisitions keyed by spoke count.
class AcquisitionCache {
 public:
  AcquisitionCache(std::size_t image_size, std::size_t radius = 0, int dcf_iterations = 10);
  std::shared_ptr<const Acquisition> get(std::size_t n_spokes);
  std::size_t image_size() const noexcept { return image_size_; }

 private:
  std::size_t image_size_;
  std::size_t radius_;
  int dcf_iterations_;
  std::mutex mutex_;
  std::map<std::size_t, std::shared_ptr<const Acquisition>> entries_;
};

struct Problem {
  Image gt;
  Image x_d;
  std::size_t n_spokes = 0;
  double dr = 0.0;
  double tau = 0.0;
};

/// Simulates noisy measurements of `gt` and back-projects them.
Problem make_problem(const Acquisition& acq, Image gt, double dr, Rng& rng);

/// Log-uniform dynamic range in [lo, hi].
double sample_dynamic_range(Rng& rng, double lo, double hi);

/// Maps a sample index to a ground-truth image.
using PhantomSource = std::function<Image(std::size_t index)>;

/// Random-ellipse phantoms, one independent seed per index.
PhantomSource random_ellipse_source(std::uint64_t seed, std::size_t size);

}  // namespace r2d2
