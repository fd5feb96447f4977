#include <benchmark/benchmark.h>

#include "r2d2/dcf.hpp"
#include "r2d2/engine.hpp"
#include "r2d2/phantom.hpp"
#include "r2d2/residual.hpp"
#include "r2d2/sim.hpp"
#include "r2d2/unet.hpp"

using namespace r2d2;

namespace {

NufftPlan weighted(std::size_t spokes, std::size_t size) {
  const NufftPlan raw(radial_trajectory(spokes, size), size, size);
  return attach_weights(raw, pipe_menon(raw));
}

void BM_NufftForward(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const NufftPlan plan = weighted(static_cast<std::size_t>(state.range(1)), size);
  const Image x = make_phantom({.size = size});
  for (auto _ : state) benchmark::DoNotOptimize(plan.forward(x));
  state.counters["M"] = static_cast<double>(plan.num_points());
}
BENCHMARK(BM_NufftForward)->Args({32, 32})->Args({128, 64})->Args({320, 80})->Unit(benchmark::kMillisecond);

void BM_NufftAdjoint(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const NufftPlan plan = weighted(static_cast<std::size_t>(state.range(1)), size);
  const ComplexVector y = plan.forward(make_phantom({.size = size}));
  for (auto _ : state) benchmark::DoNotOptimize(plan.adjoint(y));
  state.counters["M"] = static_cast<double>(plan.num_points());
}
BENCHMARK(BM_NufftAdjoint)->Args({32, 32})->Args({128, 64})->Args({320, 80})->Unit(benchmark::kMillisecond);

// Exact residual cost grows with the number of samples; the FFT one does not.
void BM_ResidualExact(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const NufftPlan plan = weighted(static_cast<std::size_t>(state.range(1)), size);
  const Image gt = make_phantom({.size = size});
  const Image xd = back_project(plan, plan.forward(gt));
  const Image x = 0.5 * gt;
  for (auto _ : state) benchmark::DoNotOptimize(residual_exact(plan, xd, x));
  state.counters["M"] = static_cast<double>(plan.num_points());
}
BENCHMARK(BM_ResidualExact)
    ->Args({320, 20})
    ->Args({320, 40})
    ->Args({320, 80})
    ->Args({320, 160})
    ->Unit(benchmark::kMillisecond);

void BM_ResidualFft(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const NufftPlan plan = weighted(static_cast<std::size_t>(state.range(1)), size);
  const Image gt = make_phantom({.size = size});
  const Image xd = back_project(plan, plan.forward(gt));
  const PsfSpectrum spec(compute_psf(plan));
  const Image x = 0.5 * gt;
  for (auto _ : state) benchmark::DoNotOptimize(residual_fft(spec, xd, x));
  state.counters["M"] = static_cast<double>(plan.num_points());
}
BENCHMARK(BM_ResidualFft)->Args({320, 20})->Args({320, 80})->Args({320, 160})->Unit(benchmark::kMillisecond);

void BM_PipeMenon(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const NufftPlan plan(radial_trajectory(static_cast<std::size_t>(state.range(1)), size), size, size);
  for (auto _ : state) benchmark::DoNotOptimize(pipe_menon(plan));
}
BENCHMARK(BM_PipeMenon)->Args({32, 32})->Args({320, 80})->Unit(benchmark::kMillisecond);

void BM_UNetForward(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  UNet net;
  Rng rng(1);
  net.initialize(rng, false);
  const Image x = make_phantom({.size = size});
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(x, x));
}
BENCHMARK(BM_UNetForward)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
