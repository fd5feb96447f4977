#include "r2d2/sim.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "r2d2/error.hpp"
#include "r2d2/io.hpp"

namespace r2d2 {
namespace {

void check_dynamic_range(double dr) {
  require(std::isfinite(dr) && dr >= kMinDynamicRange && dr <= kMaxDynamicRange,
          "dynamic range must lie in [10, 1e4]");
}

}  // namespace

NoiseOperatorNorms noise_operator_norms(const NufftPlan& weighted_plan) {
  const auto once = spectral_norm(weighted_plan, Weighting::Once);
  const auto twice = spectral_norm(weighted_plan, Weighting::Twice);
  NoiseOperatorNorms n;
  n.l = once.value * once.value;
  n.lp = twice.value * twice.value;
  n.converged = once.converged && twice.converged;
  return n;
}

double noise_gain(const NufftPlan& weighted_plan) {
  const auto n = noise_operator_norms(weighted_plan);
  if (!(n.lp > 0.0) || !std::isfinite(n.l)) throw NumericalError("noise_gain: degenerate operator norm");
  return std::sqrt(2.0 * n.l * n.l / n.lp);
}

double noise_std(const NufftPlan& weighted_plan, double dr) {
  check_dynamic_range(dr);
  return noise_gain(weighted_plan) / dr;
}

MeasurementSet simulate(const NufftPlan& weighted_plan, const Image& gt, double dr, Rng& rng) {
  check_dynamic_range(dr);
  return simulate_with_tau(weighted_plan, gt, dr, noise_std(weighted_plan, dr), rng);
}

MeasurementSet simulate_with_tau(const NufftPlan& weighted_plan, const Image& gt, double dr,
                                 double tau, Rng& rng) {
  check_dynamic_range(dr);
  require(std::isfinite(tau) && tau > 0.0, "simulate: noise std must be positive");
  require_data(gt.height() == weighted_plan.height() && gt.width() == weighted_plan.width(),
               "simulate: ground truth dimensions do not match plan");
  require_data(all_finite(gt) && min_value(gt) >= 0.0 && max_value(gt) <= 1.0 + 1e-6,
               "simulate: ground truth must be finite with intensities in [0, 1]");
  MeasurementSet set;
  set.y = weighted_plan.forward(gt);
  const double s = tau / std::sqrt(2.0);
  for (auto& v : set.y) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    v += Complex(s * re, s * im);
  }
  set.tau = tau;
  set.dr = dr;
  set.n_spokes = weighted_plan.trajectory().n_spokes;
  set.seed = rng.seed();
  set.stream = rng.stream();
  return set;
}

Image back_project(const NufftPlan& weighted_plan, std::span<const Complex> y) {
  return weighted_plan.kappa() * weighted_plan.weighted_adjoint(y).real();
}

void write_measurement(const std::filesystem::path& path, const MeasurementSet& set,
                       std::size_t radius, std::size_t image_size) {
  write_complex(path, set.y);
  nlohmann::ordered_json side;
  side["magic"] = "R2D2MEAS1";
  side["tau"] = set.tau;
  side["n_spokes"] = set.n_spokes;
  side["radius"] = radius;
  side["dr"] = set.dr;
  side["seed"] = set.seed;
  side["stream"] = set.stream;
  side["image_size"] = image_size;
  side["m"] = set.y.size();
  std::ofstream out(path.string() + ".json");
  require_data(static_cast<bool>(out), "cannot write measurement sidecar");
  out << side.dump(2) << "\n";
}

MeasurementFile read_measurement(const std::filesystem::path& path) {
  MeasurementFile file;
  file.set.y = read_complex(path);
  const std::filesystem::path side_path = path.string() + ".json";
  if (!std::filesystem::exists(side_path)) return file;
  std::ifstream in(side_path);
  require_data(static_cast<bool>(in), "cannot open measurement sidecar");
  nlohmann::json side;
  try {
    side = nlohmann::json::parse(in);
    require_data(side.value("magic", "") == "R2D2MEAS1", "measurement sidecar: bad magic");
    require_data(side.at("m").get<std::size_t>() == file.set.y.size(),
                 "measurement sidecar: length does not match data");
    file.set.tau = side.at("tau").get<double>();
    file.set.dr = side.at("dr").get<double>();
    file.set.n_spokes = side.at("n_spokes").get<std::size_t>();
    file.set.seed = side.at("seed").get<std::uint64_t>();
    file.set.stream = side.at("stream").get<std::uint64_t>();
    file.radius = side.at("radius").get<std::size_t>();
    file.image_size = side.at("image_size").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("measurement sidecar: ") + e.what());
  }
  file.has_sidecar = true;
  return file;
}

}  // namespace r2d2
