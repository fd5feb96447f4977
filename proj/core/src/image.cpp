#include "r2d2/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "r2d2/error.hpp"

namespace r2d2 {

Image::Image(std::size_t height, std::size_t width, double fill)
    : height_(height), width_(width), data_(height * width, fill) {}

Image::Image(std::size_t height, std::size_t width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
  require_data(data_.size() == height_ * width_, "image data length does not match height*width");
}

Image& Image::operator+=(const Image& other) {
  require_data(same_shape(other), "image dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Image& Image::operator-=(const Image& other) {
  require_data(same_shape(other), "image dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Image& Image::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Image operator+(Image a, const Image& b) { return a += b; }
Image operator-(Image a, const Image& b) { return a -= b; }
Image operator*(double s, Image a) { return a *= s; }

Image centered_dirac(std::size_t height, std::size_t width) {
  Image d(height, width);
  d(height / 2, width / 2) = 1.0;
  return d;
}

double norm2(const Image& x) {
  double acc = 0.0;
  for (double v : x.data()) acc += v * v;
  return std::sqrt(acc);
}

double norm_inf(const Image& x) {
  double m = 0.0;
  for (double v : x.data()) m = std::max(m, std::abs(v));
  return m;
}

double sum(const Image& x) {
  auto d = x.data();
  return std::accumulate(d.begin(), d.end(), 0.0);
}

double mean(const Image& x) { return x.empty() ? 0.0 : sum(x) / static_cast<double>(x.size()); }

double max_value(const Image& x) {
  require(!x.empty(), "max of an empty image");
  auto d = x.data();
  return *std::max_element(d.begin(), d.end());
}

double min_value(const Image& x) {
  require(!x.empty(), "min of an empty image");
  auto d = x.data();
  return *std::min_element(d.begin(), d.end());
}

bool all_finite(const Image& x) {
  auto d = x.data();
  return std::all_of(d.begin(), d.end(), [](double v) { return std::isfinite(v); });
}

Image positive_part(Image x) {
  for (auto& v : x.data()) v = std::max(v, 0.0);
  return x;
}

Image ComplexImage::real() const {
  Image out(height, width);
  for (std::size_t k = 0; k < data.size(); ++k) out[k] = data[k].real();
  return out;
}

double norm2(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& c : v) acc += std::norm(c);
  return std::sqrt(acc);
}

}  // namespace r2d2
