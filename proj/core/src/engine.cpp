#include "r2d2/engine.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "r2d2/checkpoint.hpp"
#include "r2d2/error.hpp"

namespace r2d2 {

double alpha(const Image& x) {
  const double a = mean(x);
  return a > kAlphaGuard ? a : kAlphaGuard;
}

Image normalized_update(const ImageUpdate& model, const Image& residual, const Image& estimate,
                        double alpha) {
  const double inv = 1.0 / alpha;
  Image out = model.apply(inv * residual, inv * estimate);
  out *= alpha;
  return out;
}

ModelSeries gradient_step_series(double gamma, std::size_t count, DcMode mode) {
  ModelSeries s;
  s.dc_mode = mode;
  const auto step = baseline_gradient_step(gamma);
  s.stages.assign(count, step);
  return s;
}

Reconstruction reconstruct(const ModelSeries& series, const Image& x_d, const DataConsistency& dc) {
  require(series.dc_mode == dc.mode(), "reconstruct: data-consistency mode does not match the series");
  require_data(x_d.height() == dc.height() && x_d.width() == dc.width(),
               "reconstruct: back-projection dimensions do not match the operator");
  Reconstruction out;
  IterationTrace& trace = out.trace;
  Image x(x_d.height(), x_d.width());
  Image r = x_d;
  trace.iterates.push_back(x);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double a = i == 0 ? alpha(x_d) : alpha(x);
    Image update = normalized_update(*series.stages[i], r, x, a);
    x = positive_part(x + update);
    if (!all_finite(x)) throw NumericalError("reconstruct: non-finite estimate at iteration " + std::to_string(i + 1));
    r = dc.residual(x_d, x);
    trace.iterates.push_back(x);
    trace.residual_norms.push_back(norm2(r));
    trace.alphas.push_back(a);
  }
  out.estimate = std::move(x);
  return out;
}

void save_series(const std::filesystem::path& dir, const ModelSeries& series,
                 const std::vector<std::vector<double>>& loss_histories) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json doc;
  doc["magic"] = "R2D2SER1";
  doc["dc_mode"] = std::string(to_string(series.dc_mode));
  doc["stages"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const ImageUpdate& stage = *series.stages[i];
    nlohmann::ordered_json entry;
    entry["kind"] = stage.kind();
    if (const auto* step = dynamic_cast<const GradientStep*>(&stage)) {
      entry["gamma"] = step->gamma();
    } else if (const auto* net = dynamic_cast<const NetworkUpdate*>(&stage)) {
      char name[32];
      std::snprintf(name, sizeof name, "stage_%03zu.r2d2ckpt", i + 1);
      Checkpoint ckpt{net->network(), static_cast<int>(i + 1),
                      i < loss_histories.size() ? loss_histories[i] : std::vector<double>{}};
      write_checkpoint(dir / name, ckpt);
      entry["file"] = name;
    } else {
      throw InvalidArgument("save_series: unsupported stage type " + stage.kind());
    }
    doc["stages"].push_back(entry);
  }
  std::ofstream out(dir / "series.json");
  require_data(static_cast<bool>(out), "cannot write series.json");
  out << doc.dump(2) << "\n";
}

ModelSeries load_series(const std::filesystem::path& dir) {
  std::ifstream in(dir / "series.json");
  require_data(static_cast<bool>(in), "cannot open " + (dir / "series.json").string());
  ModelSeries series;
  try {
    const auto doc = nlohmann::json::parse(in);
    require_data(doc.at("magic") == "R2D2SER1", "series.json: magic mismatch");
    series.dc_mode = parse_dc_mode(doc.at("dc_mode").get<std::string>());
    std::optional<UNetConfig> arch;
    for (const auto& entry : doc.at("stages")) {
      const auto kind = entry.at("kind").get<std::string>();
      if (kind == "gradient_step") {
        series.stages.push_back(baseline_gradient_step(entry.at("gamma").get<double>()));
      } else if (kind == "unet") {
        Checkpoint ckpt = read_checkpoint(dir / entry.at("file").get<std::string>());
        require_data(ckpt.stage == static_cast<int>(series.size() + 1), "series: checkpoints out of order");
        require_data(!arch || *arch == ckpt.network.config(), "series: stages disagree on architecture");
        arch = ckpt.network.config();
        series.stages.push_back(std::make_shared<NetworkUpdate>(std::move(ckpt.network)));
      } else {
        throw DataError("series.json: unknown stage kind " + kind);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("series.json: ") + e.what());
  }
  return series;
}

}  // namespace r2d2
