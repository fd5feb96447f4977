#include "r2d2/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <string>

#include "r2d2/error.hpp"

namespace r2d2 {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require_data(static_cast<bool>(in), "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require_data(static_cast<bool>(out), "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  require_data(static_cast<bool>(out), "write failed for " + path.string());
}

// Splits a container into its parsed header and the raw payload.
std::pair<nlohmann::json, std::string_view> split_container(const std::string& bytes,
                                                            const std::string& magic) {
  const auto eol = bytes.find('\n');
  require_data(eol != std::string::npos, "missing header line");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(0, eol));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed header: ") + e.what());
  }
  require_data(header.is_object() && header.value("magic", "") == magic,
               "magic mismatch: expected " + magic);
  return {header, std::string_view(bytes).substr(eol + 1)};
}

std::size_t header_count(const nlohmann::json& header, const char* key) {
  require_data(header.contains(key) && header[key].is_number_unsigned(),
               std::string("header field '") + key + "' missing or invalid");
  return header[key].get<std::size_t>();
}

}  // namespace

namespace detail {

void append_f32le(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFu));
}

float load_f32le(const char* p) {
  std::uint32_t bits = 0;
  for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[b])) << (8 * b);
  return std::bit_cast<float>(bits);
}

}  // namespace detail

void write_image(const std::filesystem::path& path, const Image& image) {
  require_data(all_finite(image), "refusing to write non-finite image values");
  ordered_json header;
  header["magic"] = "R2D2IMG1";
  header["h"] = image.height();
  header["w"] = image.width();
  header["dtype"] = "f32le";
  std::string bytes = header.dump() + "\n";
  bytes.reserve(bytes.size() + 4 * image.size());
  for (double v : image.data()) detail::append_f32le(bytes, v);
  spill(path, bytes);
}

Image read_image(const std::filesystem::path& path) {
  const std::string bytes = slurp(path);
  const auto [header, payload] = split_container(bytes, "R2D2IMG1");
  require_data(header.value("dtype", "") == "f32le", "unsupported image dtype");
  const std::size_t h = header_count(header, "h");
  const std::size_t w = header_count(header, "w");
  require_data(payload.size() >= 4 * h * w, "truncated image payload");
  require_data(payload.size() == 4 * h * w, "trailing bytes after image payload");
  std::vector<double> data(h * w);
  for (std::size_t k = 0; k < data.size(); ++k) {
    const float v = detail::load_f32le(payload.data() + 4 * k);
    require_data(std::isfinite(v), "non-finite value in image payload");
    data[k] = v;
  }
  return Image(h, w, std::move(data));
}

void write_complex(const std::filesystem::path& path, const ComplexVector& values) {
  ordered_json header;
  header["magic"] = "R2D2CPX1";
  header["m"] = values.size();
  header["dtype"] = "c64le";
  std::string bytes = header.dump() + "\n";
  bytes.reserve(bytes.size() + 8 * values.size());
  for (const auto& c : values) {
    require_data(std::isfinite(c.real()) && std::isfinite(c.imag()),
                 "refusing to write non-finite measurement values");
    detail::append_f32le(bytes, c.real());
    detail::append_f32le(bytes, c.imag());
  }
  spill(path, bytes);
}

ComplexVector read_complex(const std::filesystem::path& path) {
  const std::string bytes = slurp(path);
  const auto [header, payload] = split_container(bytes, "R2D2CPX1");
  require_data(header.value("dtype", "") == "c64le", "unsupported complex dtype");
  const std::size_t m = header_count(header, "m");
  require_data(payload.size() >= 8 * m, "truncated complex payload");
  require_data(payload.size() == 8 * m, "trailing bytes after complex payload");
  ComplexVector out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const float re = detail::load_f32le(payload.data() + 8 * k);
    const float im = detail::load_f32le(payload.data() + 8 * k + 4);
    require_data(std::isfinite(re) && std::isfinite(im), "non-finite value in complex payload");
    out[k] = {re, im};
  }
  return out;
}

Image quantize_f32(Image x) {
  for (auto& v : x.data()) v = static_cast<float>(v);
  return x;
}

}  // namespace r2d2
