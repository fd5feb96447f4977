#pragma once

#include <filesystem>

#include "r2d2/image.hpp"

namespace r2d2 {

// .r2d2img: one JSON header line {"magic":"R2D2IMG1","h":H,"w":W,"dtype":"f32le"}
// followed by H*W little-endian f32 samples in row-major order.
void write_image(const std::filesystem::path& path, const Image& image);
Image read_image(const std::filesystem::path& path);

// .r2d2cplx: header {"magic":"R2D2CPX1","m":M,"dtype":"c64le"} followed by
// M interleaved (re, im) little-endian f32 pairs.
void write_complex(const std::filesystem::path& path, const ComplexVector& values);
ComplexVector read_complex(const std::filesystem::path& path);

/// Rounds every sample to the nearest f32, i.e. what a disk round-trip yields.
Image quantize_f32(Image x);

namespace detail {
void append_f32le(std::string& out, double v);
float load_f32le(const char* p);
}  // namespace detail

}  // namespace r2d2
