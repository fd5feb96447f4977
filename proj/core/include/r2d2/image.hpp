#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace r2d2 {

using Complex = std::complex<double>;

/// Measurement vector in k-space, one entry per trajectory point.
using ComplexVector = std::vector<Complex>;

/// Real-valued row-major 2D image. Samples are held in f64.
class Image {
 public:
  Image() = default;
  Image(std::size_t height, std::size_t width, double fill = 0.0);
  Image(std::size_t height, std::size_t width, std::vector<double> data);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }
  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  bool same_shape(const Image& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  Image& operator+=(const Image& other);
  Image& operator-=(const Image& other);
  Image& operator*=(double s);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> data_;
};

Image operator+(Image a, const Image& b);
Image operator-(Image a, const Image& b);
Image operator*(double s, Image a);

/// Dirac image with a single unit sample at (height/2, width/2).
Image centered_dirac(std::size_t height, std::size_t width);

double norm2(const Image& x);
double norm_inf(const Image& x);
double sum(const Image& x);
double mean(const Image& x);
double max_value(const Image& x);
double min_value(const Image& x);
bool all_finite(const Image& x);

/// Elementwise projection onto the nonnegative orthant.
Image positive_part(Image x);

/// Complex-valued image, e.g. the raw output of an adjoint NUFFT.
struct ComplexImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<Complex> data;

  Image real() const;
};

double norm2(std::span<const Complex> v);

}  // namespace r2d2
