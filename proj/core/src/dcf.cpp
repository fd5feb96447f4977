#include "r2d2/dcf.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "r2d2/error.hpp"

namespace r2d2 {

namespace {
constexpr double kDivisionGuard = 1e-12;
}

std::vector<double> pipe_menon_step(const NufftPlan& plan, std::span<const double> d) {
  require_data(d.size() == plan.num_points(), "pipe_menon: weight length mismatch");
  const std::vector<double> density = plan.interpolate(plan.spread(d));
  std::vector<double> next(d.size());
  for (std::size_t m = 0; m < d.size(); ++m) {
    const double denom = std::abs(density[m]);
    if (!(denom >= kDivisionGuard)) {
      throw NumericalError("pipe_menon: vanishing sampling density at point " + std::to_string(m));
    }
    next[m] = d[m] / denom;
  }
  return next;
}

DcWeights pipe_menon(const NufftPlan& plan, int iterations, std::span<const double> initial) {
  require(iterations >= 1, "pipe_menon: iteration count must be at least 1");
  DcWeights out;
  if (initial.empty()) {
    out.d.assign(plan.num_points(), 1.0);
  } else {
    out.d.assign(initial.begin(), initial.end());
  }
  for (int k = 0; k < iterations; ++k) out.d = pipe_menon_step(plan, out.d);
  out.iterations = iterations;
  return out;
}

NufftPlan attach_weights(const NufftPlan& plan, std::span<const double> d) {
  return plan.with_weights(std::vector<double>(d.begin(), d.end()));
}

NufftPlan attach_weights(const NufftPlan& plan, const DcWeights& weights) {
  return plan.with_weights(weights.d);
}

void write_weights_csv(const std::filesystem::path& path, std::span<const double> d) {
  std::ofstream out(path);
  require_data(static_cast<bool>(out), "cannot write " + path.string());
  out << "index,weight\n";
  char line[64];
  for (std::size_t m = 0; m < d.size(); ++m) {
    std::snprintf(line, sizeof line, "%zu,%.17g\n", m, d[m]);
    out << line;
  }
}

std::vector<double> read_weights_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require_data(static_cast<bool>(in), "cannot open " + path.string());
  std::string line;
  require_data(std::getline(in, line) && line.rfind("index,weight", 0) == 0,
               "weights CSV header must be index,weight");
  std::vector<double> d;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t index = 0;
    double v = 0.0;
    require_data(std::sscanf(line.c_str(), "%zu,%lf", &index, &v) == 2 && index == d.size(),
                 "malformed weights row: " + line);
    d.push_back(v);
  }
  return d;
}

}  // namespace r2d2
