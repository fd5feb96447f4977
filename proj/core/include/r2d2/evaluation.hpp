#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "r2d2/engine.hpp"
#include "r2d2/metrics.hpp"
#include "r2d2/problems.hpp"

namespace r2d2 {

/// Test sweep: the same `problems_per_spoke` ground truths are measured at
/// every spoke count, giving spokes.size() * problems_per_spoke problems.
struct BenchConfig {
  std::size_t image_size = 32;
  std::size_t radius = 0;
  std::vector<std::size_t> spokes{10, 20, 30, 40, 50, 60, 70, 80};
  std::size_t problems_per_spoke = 20;
  std::uint64_t seed = 7;
  std::optional<double> fixed_dr;  // otherwise log-uniform per ground truth
  double min_dr = 10.0;
  double max_dr = 1e4;
  std::size_t threads = 1;
  int dcf_iterations = 10;
};

/// Runs every problem through `series`; rows are ordered by (spokes, gt index)
/// regardless of thread count.
EvalReport run_benchmark(const ModelSeries& series, const BenchConfig& config, const PhantomSource& phantoms);

}  // namespace r2d2
