#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "r2d2/fft.hpp"
#include "r2d2/image.hpp"
#include "r2d2/nufft.hpp"

namespace r2d2 {

/// r = x_d - kappa Re{Phi^H D Phi x}.
Image residual_exact(const NufftPlan& weighted_plan, const Image& x_d, const Image& x);

/// Transfer function of the PSF on the image grid, F h, with the PSF peak
/// (pixel (h/2, w/2)) moved to the DFT origin. Convolution is circular.
class PsfSpectrum {
 public:
  explicit PsfSpectrum(const Image& psf);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::span<const Complex> values() const noexcept { return spectrum_; }

  /// Re{F^-1 ((F h) . (F x))}.
  Image apply(const Image& x) const;

 private:
  std::size_t height_;
  std::size_t width_;
  Fft2d fft_;
  std::vector<Complex> spectrum_;
};

PsfSpectrum precompute_psf_spectrum(const Image& psf);

/// r = x_d - Re{F^-1 ((F h) . (F x))}.
Image residual_fft(const PsfSpectrum& spectrum, const Image& x_d, const Image& x);

enum class DcMode { Exact, Fft };

std::string_view to_string(DcMode mode);
DcMode parse_dc_mode(std::string_view text);

/// Residual operator used by the reconstruction loop: either the exact
/// NUFFT normal operator or its PSF convolution approximation.
class DataConsistency {
 public:
  static DataConsistency exact(NufftPlan weighted_plan);
  static DataConsistency fft(PsfSpectrum spectrum);
  /// PSF spectrum of `weighted_plan`.
  static DataConsistency fft(const NufftPlan& weighted_plan);
  static DataConsistency make(DcMode mode, const NufftPlan& weighted_plan);

  DcMode mode() const noexcept;
  std::size_t height() const noexcept;
  std::size_t width() const noexcept;
  Image residual(const Image& x_d, const Image& x) const;

 private:
  explicit DataConsistency(std::variant<NufftPlan, PsfSpectrum> impl) : impl_(std::move(impl)) {}
  std::variant<NufftPlan, PsfSpectrum> impl_;
};

}  // namespace r2d2
