#include "r2d2/evaluation.hpp"

#include <atomic>
#include <mutex>
#include <exception>
#include <thread>

#include "r2d2/error.hpp"
#include "r2d2/trajectory.hpp"

namespace r2d2 {

EvalReport run_benchmark(const ModelSeries& series, const BenchConfig& cfg, const PhantomSource& phantoms) {
  require(!cfg.spokes.empty() && cfg.problems_per_spoke >= 1, "bench: empty problem grid");
  require(cfg.threads >= 1, "bench: need at least one thread");
  AcquisitionCache cache(cfg.image_size, cfg.radius, cfg.dcf_iterations);
  for (std::size_t s : cfg.spokes) {
    require(s >= 1, "bench: spoke counts must be positive");
    cache.get(s);
  }

  std::vector<Image> gts(cfg.problems_per_spoke);
  std::vector<double> drs(cfg.problems_per_spoke);
  for (std::size_t g = 0; g < gts.size(); ++g) {
    gts[g] = phantoms(g);
    Rng rng(cfg.seed, g);
    drs[g] = cfg.fixed_dr ? *cfg.fixed_dr : sample_dynamic_range(rng, cfg.min_dr, cfg.max_dr);
  }

  const std::size_t total = cfg.spokes.size() * cfg.problems_per_spoke;
  EvalReport report;
  report.problems.resize(total);
  const std::size_t n_pixels = cfg.image_size * cfg.image_size;

  const auto solve = [&](std::size_t idx) {
    const std::size_t si = idx / cfg.problems_per_spoke;
    const std::size_t g = idx % cfg.problems_per_spoke;
    const auto acq = cache.get(cfg.spokes[si]);
    Rng rng(cfg.seed, 0x100000000ull + idx);
    const Problem p = make_problem(*acq, gts[g], drs[g], rng);
    const Reconstruction rec = reconstruct(series, p.x_d, acq->dc(series.dc_mode));
    ProblemResult& row = report.problems[idx];
    row.gt_index = g;
    row.n_spokes = p.n_spokes;
    row.af = acceleration_factor(p.n_spokes, n_pixels);
    row.dr = p.dr;
    row.snr_db = snr(rec.estimate, p.gt);
    row.logsnr_db = logsnr(rec.estimate, p.gt, p.dr).db;
    for (std::size_t i = 1; i < rec.trace.iterates.size(); ++i) row.trace_snr.push_back(snr(rec.trace.iterates[i], p.gt));
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      try {
        solve(idx);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (cfg.threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < cfg.threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

}  // namespace r2d2
