#pragma once

namespace r2d2::kb {

/// Shape parameter from Beatty et al. for kernel width `width` (grid units)
/// and grid oversampling `sigma`.
double optimal_beta(int width, double sigma);

/// I0(beta * sqrt(1 - (2s/width)^2)) / I0(beta) on |s| <= width/2, zero outside.
double kernel(double s, int width, double beta);

/// Continuous Fourier transform of `kernel` at frequency `f` (cycles per
/// grid unit), i.e. integral of kernel(s) * exp(2 pi i s f) ds.
double fourier(double f, int width, double beta);

}  // namespace r2d2::kb
