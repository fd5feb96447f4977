#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "r2d2/nufft.hpp"

namespace r2d2 {

inline constexpr int kPipeMenonIterations = 10;

/// Density-compensation weights d, one positive entry per k-space point.
struct DcWeights {
  std::vector<double> d;
  int iterations = 0;
};

/// One Pipe-Menon update d <- d / |G G^H d| with G the plan's
/// interpolation operator. Throws NumericalError if any |G G^H d| < 1e-12.
std::vector<double> pipe_menon_step(const NufftPlan& plan, std::span<const double> d);

/// `iterations` Pipe-Menon updates starting from d = 1 (or from `initial`).
DcWeights pipe_menon(const NufftPlan& plan, int iterations = kPipeMenonIterations,
                     std::span<const double> initial = {});

/// Plan whose back-projections use Phi^H D; kappa is recomputed.
NufftPlan attach_weights(const NufftPlan& plan, std::span<const double> d);
NufftPlan attach_weights(const NufftPlan& plan, const DcWeights& weights);

// CSV with header "index,weight".
void write_weights_csv(const std::filesystem::path& path, std::span<const double> d);
std::vector<double> read_weights_csv(const std::filesystem::path& path);

}  // namespace r2d2
