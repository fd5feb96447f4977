#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include "r2d2/image.hpp"
#include "r2d2/model.hpp"
#include "r2d2/residual.hpp"

namespace r2d2 {

inline constexpr double kAlphaGuard = 1e-12;

/// Normalization factor: mean pixel value, replaced by 1e-12 when not above it.
double alpha(const Image& x);

/// alpha * G(r / alpha, x / alpha).
Image normalized_update(const ImageUpdate& model, const Image& residual, const Image& estimate,
                        double alpha);

/// Ordered stages G_1..G_I and the data-consistency mode they were trained with.
struct ModelSeries {
  std::vector<std::shared_ptr<const ImageUpdate>> stages;
  DcMode dc_mode = DcMode::Exact;

  std::size_t size() const noexcept { return stages.size(); }
};

/// `count` copies of the gamma * r Landweber step.
ModelSeries gradient_step_series(double gamma, std::size_t count, DcMode mode = DcMode::Exact);

struct IterationTrace {
  std::vector<Image> iterates;          // x^0 .. x^I
  std::vector<double> residual_norms;   // ||r^i||_2, i = 1..I
  std::vector<double> alphas;           // alpha^{i-1}, i = 1..I
};

struct Reconstruction {
  Image estimate;
  IterationTrace trace;
};

/// x^0 = 0, r^0 = x_d; x^i = [x^{i-1} + alpha G_i(r^{i-1}/alpha, x^{i-1}/alpha)]_+
/// with alpha = alpha(x^{i-1}) (alpha(x_d) for i = 1), r^i from `dc`.
Reconstruction reconstruct(const ModelSeries& series, const Image& x_d, const DataConsistency& dc);

// Series directory: series.json plus one checkpoint per network stage.
void save_series(const std::filesystem::path& dir, const ModelSeries& series,
                 const std::vector<std::vector<double>>& loss_histories = {});
ModelSeries load_series(const std::filesystem::path& dir);

}  // namespace r2d2
