#include "r2d2/checkpoint.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>

#include "r2d2/error.hpp"
#include "r2d2/io.hpp"

namespace r2d2 {

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  const UNet& net = ckpt.network;
  nlohmann::ordered_json header;
  header["magic"] = "R2D2CKPT1";
  header["architecture"] = {{"type", "unet"},
                            {"depth", net.config().depth},
                            {"base_channels", net.config().base_channels},
                            {"in_channels", net.config().in_channels},
                            {"out_channels", net.config().out_channels}};
  header["stage"] = ckpt.stage;
  header["normalization"] = {{"alpha", "mean of previous estimate (x_d at stage 1)"},
                             {"alpha_guard", 1e-12},
                             {"mapping", "alpha * G(r / alpha, x / alpha)"}};
  header["loss_history"] = ckpt.loss_history;
  auto tensors = nlohmann::ordered_json::array();
  for (const auto& layer : net.layout()) {
    tensors.push_back({{"name", layer.name + ".weight"},
                       {"shape", {layer.shape.out, layer.shape.in, 3, 3}}});
    tensors.push_back({{"name", layer.name + ".bias"}, {"shape", {layer.shape.out}}});
  }
  header["tensors"] = tensors;
  header["dtype"] = "f32le";
  header["count"] = net.num_parameters();

  std::string bytes = header.dump() + "\n";
  for (double v : net.parameters()) {
    require_data(std::isfinite(v), "refusing to write non-finite parameters");
    detail::append_f32le(bytes, v);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require_data(static_cast<bool>(out), "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require_data(static_cast<bool>(in), "cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto eol = bytes.find('\n');
  require_data(eol != std::string::npos, "checkpoint: missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(0, eol));
    require_data(header.at("magic") == "R2D2CKPT1", "checkpoint: magic mismatch");
    require_data(header.at("dtype") == "f32le", "checkpoint: unsupported dtype");
    const auto& arch = header.at("architecture");
    require_data(arch.at("type") == "unet", "checkpoint: unsupported architecture");
    UNetConfig config;
    config.depth = arch.at("depth").get<int>();
    config.base_channels = arch.at("base_channels").get<int>();
    config.in_channels = arch.at("in_channels").get<int>();
    config.out_channels = arch.at("out_channels").get<int>();
    Checkpoint ckpt{UNet(config), header.at("stage").get<int>(),
                    header.at("loss_history").get<std::vector<double>>()};
    auto params = ckpt.network.parameters();
    require_data(header.at("count").get<std::size_t>() == params.size(),
                 "checkpoint: parameter count does not match architecture");
    const std::string_view payload = std::string_view(bytes).substr(eol + 1);
    require_data(payload.size() >= 4 * params.size(), "checkpoint: truncated payload");
    require_data(payload.size() == 4 * params.size(), "checkpoint: trailing bytes after payload");
    for (std::size_t k = 0; k < params.size(); ++k) {
      const float v = detail::load_f32le(payload.data() + 4 * k);
      require_data(std::isfinite(v), "checkpoint: non-finite parameter");
      params[k] = v;
    }
    return ckpt;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint: malformed header: ") + e.what());
  }
}

}  // namespace r2d2
