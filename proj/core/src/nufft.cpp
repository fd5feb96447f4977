#include "r2d2/nufft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "r2d2/error.hpp"
#include "r2d2/kaiser_bessel.hpp"
#include "r2d2/rng.hpp"

namespace r2d2 {

struct NufftPlan::Tables {
  std::size_t h = 0, w = 0, gh = 0, gw = 0;
  double beta = 0.0;
  Trajectory traj;
  std::vector<std::int32_t> indices;  // num_points x kKernelTaps
  std::vector<double> taps;           // num_points x kKernelTaps
  Image deapod;                       // h x w
  std::vector<std::size_t> pixel_to_grid;
  Fft2d fft;

  Tables(std::size_t gh_, std::size_t gw_) : fft(gh_, gw_) {}
};

namespace {

constexpr double kBandTolerance = 1e-12;

constexpr double kAlignTolerance = 1e-9;

bool on_node(double t) { return std::abs(t - std::round(t)) < kAlignTolerance; }

// Kernel taps along one axis for continuous grid coordinate t. The window is
// centred on the nearest node so that the closed support is always covered.
void axis_taps(double t, std::size_t grid, std::int32_t* idx, double* wts, double beta) {
  if (on_node(t)) t = std::round(t);
  constexpr int J = NufftPlan::kKernelWidth;
  const double first = std::round(t) - 0.5 * J;
  const auto g = static_cast<long>(grid);
  for (int a = 0; a < NufftPlan::kAxisTaps; ++a) {
    const double u = first + a;
    wts[a] = kb::kernel(t - u, J, beta);
    long wrapped = static_cast<long>(u) % g;
    if (wrapped < 0) wrapped += g;
    idx[a] = static_cast<std::int32_t>(wrapped);
  }
}

// Discrete kernel spectrum; equals the analytic transform up to aliasing and
// makes the operator an exact DFT when every sample sits on a grid node.
double discrete_fourier(double p, std::size_t grid, double beta) {
  constexpr int J = NufftPlan::kKernelWidth;
  double s = 0.0;
  for (int u = -J / 2; u <= J / 2; ++u) {
    s += kb::kernel(u, J, beta) * std::cos(2.0 * std::numbers::pi * u * p / static_cast<double>(grid));
  }
  return s;
}

std::size_t wrap(long v, std::size_t n) {
  long r = v % static_cast<long>(n);
  if (r < 0) r += static_cast<long>(n);
  return static_cast<std::size_t>(r);
}

}  // namespace

NufftPlan::NufftPlan(const Trajectory& traj, std::size_t height, std::size_t width) {
  require(height >= 4 && width >= 4 && height % 2 == 0 && width % 2 == 0,
          "NufftPlan: image dimensions must be even and at least 4");
  require(!traj.points.empty(), "NufftPlan: empty trajectory");
  constexpr int J = kKernelWidth;
  const double band = std::numbers::pi * (1.0 + kBandTolerance);
  for (const auto& p : traj.points) {
    require_data(std::isfinite(p.kx) && std::isfinite(p.ky) && std::abs(p.kx) <= band &&
                     std::abs(p.ky) <= band,
                 "NufftPlan: trajectory point outside [-pi, pi]^2");
  }

  auto t = std::make_shared<Tables>(kOversampling * height, kOversampling * width);
  t->h = height;
  t->w = width;
  t->gh = kOversampling * height;
  t->gw = kOversampling * width;
  t->beta = kb::optimal_beta(J, static_cast<double>(kOversampling));
  t->traj = traj;

  const std::size_t m_count = traj.size();
  t->indices.resize(m_count * kKernelTaps);
  t->taps.resize(m_count * kKernelTaps);
  const double to_grid_x = static_cast<double>(t->gw) / (2.0 * std::numbers::pi);
  const double to_grid_y = static_cast<double>(t->gh) / (2.0 * std::numbers::pi);
  bool aligned = true;
  for (std::size_t m = 0; m < m_count; ++m) {
    constexpr int A = kAxisTaps;
    std::int32_t ix[A], iy[A];
    double wx[A], wy[A];
    const double gx = traj.points[m].kx * to_grid_x;
    const double gy = traj.points[m].ky * to_grid_y;
    aligned = aligned && on_node(gx) && on_node(gy);
    axis_taps(gx, t->gw, ix, wx, t->beta);
    axis_taps(gy, t->gh, iy, wy, t->beta);
    std::int32_t* idx = &t->indices[m * kKernelTaps];
    double* tap = &t->taps[m * kKernelTaps];
    for (int b = 0; b < A; ++b) {
      for (int a = 0; a < A; ++a) {
        idx[b * A + a] = iy[b] * static_cast<std::int32_t>(t->gw) + ix[a];
        tap[b * A + a] = wy[b] * wx[a];
      }
    }
  }

  t->deapod = Image(height, width);
  t->pixel_to_grid.resize(height * width);
  std::vector<double> fx(width), fy(height);
  for (std::size_t j = 0; j < width; ++j) {
    const double px = static_cast<double>(j) - static_cast<double>(width / 2);
    fx[j] = aligned ? discrete_fourier(px, t->gw, t->beta)
                    : kb::fourier(px / static_cast<double>(t->gw), J, t->beta);
  }
  for (std::size_t i = 0; i < height; ++i) {
    const double py = static_cast<double>(i) - static_cast<double>(height / 2);
    fy[i] = aligned ? discrete_fourier(py, t->gh, t->beta)
                    : kb::fourier(py / static_cast<double>(t->gh), J, t->beta);
  }
  for (std::size_t i = 0; i < height; ++i) {
    const long py = static_cast<long>(i) - static_cast<long>(height / 2);
    for (std::size_t j = 0; j < width; ++j) {
      const long px = static_cast<long>(j) - static_cast<long>(width / 2);
      t->deapod(i, j) = 1.0 / (fy[i] * fx[j]);
      t->pixel_to_grid[i * width + j] = wrap(py, t->gh) * t->gw + wrap(px, t->gw);
    }
  }

  tables_ = std::move(t);
  weights_.assign(m_count, 1.0);
  unit_weights_ = true;
  kappa_ = compute_kappa(*this);
}

std::size_t NufftPlan::height() const noexcept { return tables_->h; }
std::size_t NufftPlan::width() const noexcept { return tables_->w; }
std::size_t NufftPlan::grid_height() const noexcept { return tables_->gh; }
std::size_t NufftPlan::grid_width() const noexcept { return tables_->gw; }
std::size_t NufftPlan::num_points() const noexcept { return tables_->traj.size(); }
double NufftPlan::kernel_beta() const noexcept { return tables_->beta; }
const Trajectory& NufftPlan::trajectory() const noexcept { return tables_->traj; }
const Image& NufftPlan::deapodization() const noexcept { return tables_->deapod; }

std::span<const std::int32_t> NufftPlan::index_row(std::size_t m) const {
  require(m < num_points(), "index_row: point out of range");
  return {tables_->indices.data() + m * kKernelTaps, static_cast<std::size_t>(kKernelTaps)};
}

std::span<const double> NufftPlan::weight_row(std::size_t m) const {
  require(m < num_points(), "weight_row: point out of range");
  return {tables_->taps.data() + m * kKernelTaps, static_cast<std::size_t>(kKernelTaps)};
}

ComplexVector NufftPlan::forward(const Image& x) const {
  const Tables& t = *tables_;
  require_data(x.height() == t.h && x.width() == t.w, "forward: image dimensions do not match plan");
  std::vector<Complex> grid(t.gh * t.gw);
  for (std::size_t p = 0; p < x.size(); ++p) grid[t.pixel_to_grid[p]] = x[p] * t.deapod[p];
  t.fft.forward(grid);
  ComplexVector y(num_points());
  for (std::size_t m = 0; m < y.size(); ++m) {
    const std::int32_t* idx = &t.indices[m * kKernelTaps];
    const double* tap = &t.taps[m * kKernelTaps];
    Complex acc = 0.0;
    for (int j = 0; j < kKernelTaps; ++j) acc += tap[j] * grid[static_cast<std::size_t>(idx[j])];
    y[m] = acc;
  }
  return y;
}

ComplexImage NufftPlan::adjoint_scaled(std::span<const Complex> y,
                                       std::span<const double> scale) const {
  const Tables& t = *tables_;
  require_data(y.size() == num_points(), "adjoint: measurement length does not match plan");
  std::vector<Complex> grid(t.gh * t.gw);
  for (std::size_t m = 0; m < y.size(); ++m) {
    const Complex v = scale.empty() ? y[m] : y[m] * scale[m];
    const std::int32_t* idx = &t.indices[m * kKernelTaps];
    const double* tap = &t.taps[m * kKernelTaps];
    for (int j = 0; j < kKernelTaps; ++j) grid[static_cast<std::size_t>(idx[j])] += tap[j] * v;
  }
  t.fft.backward(grid);
  ComplexImage out{t.h, t.w, std::vector<Complex>(t.h * t.w)};
  for (std::size_t p = 0; p < out.data.size(); ++p) out.data[p] = grid[t.pixel_to_grid[p]] * t.deapod[p];
  return out;
}

ComplexImage NufftPlan::adjoint(std::span<const Complex> y) const { return adjoint_scaled(y, {}); }

ComplexImage NufftPlan::weighted_adjoint(std::span<const Complex> y) const {
  return adjoint_scaled(y, weights_);
}

Image NufftPlan::normal(const Image& x, int weight_power) const {
  require(weight_power == 1 || weight_power == 2, "normal: weight power must be 1 or 2");
  const ComplexVector y = forward(x);
  if (weight_power == 1) return weighted_adjoint(y).real();
  std::vector<double> squared(weights_.size());
  for (std::size_t m = 0; m < squared.size(); ++m) squared[m] = weights_[m] * weights_[m];
  return adjoint_scaled(y, squared).real();
}

std::vector<double> NufftPlan::interpolate(std::span<const double> grid) const {
  const Tables& t = *tables_;
  require_data(grid.size() == t.gh * t.gw, "interpolate: grid size mismatch");
  std::vector<double> out(num_points());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const std::int32_t* idx = &t.indices[m * kKernelTaps];
    const double* tap = &t.taps[m * kKernelTaps];
    double acc = 0.0;
    for (int j = 0; j < kKernelTaps; ++j) acc += tap[j] * grid[static_cast<std::size_t>(idx[j])];
    out[m] = acc;
  }
  return out;
}

std::vector<double> NufftPlan::spread(std::span<const double> values) const {
  const Tables& t = *tables_;
  require_data(values.size() == num_points(), "spread: length mismatch");
  std::vector<double> grid(t.gh * t.gw, 0.0);
  for (std::size_t m = 0; m < values.size(); ++m) {
    const std::int32_t* idx = &t.indices[m * kKernelTaps];
    const double* tap = &t.taps[m * kKernelTaps];
    for (int j = 0; j < kKernelTaps; ++j) grid[static_cast<std::size_t>(idx[j])] += tap[j] * values[m];
  }
  return grid;
}

NufftPlan NufftPlan::with_weights(std::vector<double> d) const {
  require_data(d.size() == num_points(), "weights length does not match trajectory");
  for (double v : d) {
    require_data(std::isfinite(v) && v > 0.0, "density-compensation weights must be positive and finite");
  }
  NufftPlan out;
  out.tables_ = tables_;
  out.unit_weights_ = std::all_of(d.begin(), d.end(), [](double v) { return v == 1.0; });
  out.weights_ = std::move(d);
  out.kappa_ = compute_kappa(out);
  return out;
}

double compute_kappa(const NufftPlan& plan) {
  const Image raw = plan.normal(centered_dirac(plan.height(), plan.width()));
  const double peak = max_value(raw);
  if (!(std::isfinite(peak) && peak > 0.0)) {
    throw NumericalError("compute_kappa: non-positive PSF maximum (degenerate trajectory)");
  }
  return 1.0 / peak;
}

Image compute_psf(const NufftPlan& plan) {
  return plan.kappa() * plan.normal(centered_dirac(plan.height(), plan.width()));
}

SpectralNormResult spectral_norm(const NufftPlan& plan, Weighting weighting, int max_iterations,
                                 double tolerance) {
  require(max_iterations >= 1, "spectral_norm: need at least one iteration");
  const int power = static_cast<int>(weighting);
  Rng rng(0x5EED5EEDull, 0);
  Image v(plan.height(), plan.width());
  for (auto& s : v.data()) s = rng.gaussian();
  v *= 1.0 / norm2(v);

  SpectralNormResult result;
  double eig = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const Image av = plan.normal(v, power);
    double rayleigh = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) rayleigh += v[k] * av[k];
    const double n = norm2(av);
    if (!std::isfinite(n)) throw NumericalError("spectral_norm: non-finite iterate");
    result.iterations = it;
    if (n == 0.0) {
      eig = 0.0;
      result.converged = true;
      break;
    }
    const bool done = it > 1 && std::abs(rayleigh - eig) < tolerance * std::abs(rayleigh);
    eig = rayleigh;
    if (done) {
      result.converged = true;
      break;
    }
    v = (1.0 / n) * av;
  }
  result.value = std::sqrt(std::max(eig, 0.0));
  return result;
}

}  // namespace r2d2
