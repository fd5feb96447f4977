#include "r2d2/residual.hpp"

#include <string>

#include "r2d2/error.hpp"

namespace r2d2 {

Image residual_exact(const NufftPlan& weighted_plan, const Image& x_d, const Image& x) {
  require_data(x_d.height() == weighted_plan.height() && x_d.width() == weighted_plan.width() &&
                   x.same_shape(x_d),
               "residual_exact: dimension mismatch");
  Image r = weighted_plan.normal(x);
  r *= -weighted_plan.kappa();
  r += x_d;
  return r;
}

PsfSpectrum::PsfSpectrum(const Image& psf)
    : height_(psf.height()), width_(psf.width()), fft_(psf.height(), psf.width()) {
  require_data(!psf.empty() && all_finite(psf), "PsfSpectrum: PSF must be nonempty and finite");
  spectrum_.resize(psf.size());
  const std::size_t ch = height_ / 2, cw = width_ / 2;
  for (std::size_t i = 0; i < height_; ++i) {
    for (std::size_t j = 0; j < width_; ++j) {
      spectrum_[i * width_ + j] = psf((i + ch) % height_, (j + cw) % width_);
    }
  }
  fft_.forward(spectrum_);
}

Image PsfSpectrum::apply(const Image& x) const {
  require_data(x.height() == height_ && x.width() == width_, "PsfSpectrum: dimension mismatch");
  std::vector<Complex> buf(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) buf[k] = x[k];
  fft_.forward(buf);
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] *= spectrum_[k];
  fft_.backward(buf);
  const double inv_n = 1.0 / static_cast<double>(x.size());
  Image out(height_, width_);
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = buf[k].real() * inv_n;
  return out;
}

PsfSpectrum precompute_psf_spectrum(const Image& psf) { return PsfSpectrum(psf); }

Image residual_fft(const PsfSpectrum& spectrum, const Image& x_d, const Image& x) {
  require_data(x_d.height() == spectrum.height() && x_d.width() == spectrum.width() &&
                   x.same_shape(x_d),
               "residual_fft: dimension mismatch");
  Image r = spectrum.apply(x);
  r *= -1.0;
  r += x_d;
  return r;
}

std::string_view to_string(DcMode mode) { return mode == DcMode::Exact ? "exact" : "fft"; }

DcMode parse_dc_mode(std::string_view text) {
  if (text == "exact") return DcMode::Exact;
  if (text == "fft") return DcMode::Fft;
  throw InvalidArgument("unknown data-consistency mode '" + std::string(text) + "' (exact|fft)");
}

DataConsistency DataConsistency::exact(NufftPlan weighted_plan) {
  return DataConsistency(std::move(weighted_plan));
}

DataConsistency DataConsistency::fft(PsfSpectrum spectrum) { return DataConsistency(std::move(spectrum)); }

DataConsistency DataConsistency::fft(const NufftPlan& weighted_plan) {
  return DataConsistency(PsfSpectrum(compute_psf(weighted_plan)));
}

DataConsistency DataConsistency::make(DcMode mode, const NufftPlan& weighted_plan) {
  return mode == DcMode::Exact ? exact(weighted_plan) : fft(weighted_plan);
}

DcMode DataConsistency::mode() const noexcept {
  return std::holds_alternative<NufftPlan>(impl_) ? DcMode::Exact : DcMode::Fft;
}

std::size_t DataConsistency::height() const noexcept {
  return std::visit([](const auto& v) { return v.height(); }, impl_);
}

std::size_t DataConsistency::width() const noexcept {
  return std::visit([](const auto& v) { return v.width(); }, impl_);
}

Image DataConsistency::residual(const Image& x_d, const Image& x) const {
  if (const auto* plan = std::get_if<NufftPlan>(&impl_)) return residual_exact(*plan, x_d, x);
  return residual_fft(std::get<PsfSpectrum>(impl_), x_d, x);
}

}  // namespace r2d2
