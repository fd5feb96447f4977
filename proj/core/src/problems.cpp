#include "r2d2/problems.hpp"

#include <algorithm>
#include <cmath>

#include "r2d2/dcf.hpp"
#include "r2d2/error.hpp"
#include "r2d2/phantom.hpp"
#include "r2d2/sim.hpp"

namespace r2d2 {

Acquisition make_acquisition(std::size_t n_spokes, std::size_t image_size, std::size_t radius,
                             int dcf_iterations) {
  const NufftPlan raw(radial_trajectory(n_spokes, radius == 0 ? image_size : radius), image_size, image_size);
  NufftPlan plan = attach_weights(raw, pipe_menon(raw, dcf_iterations));
  const double gain = noise_gain(plan);
  auto exact = DataConsistency::exact(plan);
  auto fft = DataConsistency::fft(plan);
  return Acquisition{n_spokes, std::move(plan), gain, std::move(exact), std::move(fft)};
}

AcquisitionCache::AcquisitionCache(std::size_t image_size, std::size_t radius, int dcf_iterations)
    : image_size_(image_size), radius_(radius), dcf_iterations_(dcf_iterations) {}

std::shared_ptr<const Acquisition> AcquisitionCache::get(std::size_t n_spokes) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(n_spokes);
  if (it == entries_.end()) {
    auto acq = std::make_shared<const Acquisition>(
        make_acquisition(n_spokes, image_size_, radius_, dcf_iterations_));
    it = entries_.emplace(n_spokes, std::move(acq)).first;
  }
  return it->second;
}

Problem make_problem(const Acquisition& acq, Image gt, double dr, Rng& rng) {
  Problem p;
  p.tau = acq.noise_gain / dr;
  const MeasurementSet meas = simulate_with_tau(acq.plan, gt, dr, p.tau, rng);
  p.x_d = back_project(acq.plan, meas.y);
  p.gt = std::move(gt);
  p.n_spokes = acq.n_spokes;
  p.dr = dr;
  return p;
}

double sample_dynamic_range(Rng& rng, double lo, double hi) {
  require(lo > 0.0 && lo <= hi, "sample_dynamic_range: invalid range");
  return std::clamp(std::exp(rng.uniform(std::log(lo), std::log(hi))), lo, hi);
}

PhantomSource random_ellipse_source(std::uint64_t seed, std::size_t size) {
  return [seed, size](std::size_t index) {
    PhantomSpec spec;
    spec.kind = PhantomKind::RandomEllipses;
    spec.size = size;
    spec.seed = Rng(seed, 0x9000000000000000ull + index).next_u64();
    return make_phantom(spec);
  };
}

}  // namespace r2d2
