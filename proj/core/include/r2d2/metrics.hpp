#pragma once

#include <limits>
#include <string>
#include <vector>

#include "r2d2/image.hpp"

namespace r2d2 {

/// Returned by snr/logsnr when the estimate equals the reference exactly.
inline constexpr double kPerfectSnr = std::numeric_limits<double>::infinity();

/// 20 log10(||gt|| / ||gt - x||) in dB.
double snr(const Image& x, const Image& gt);

/// log_a(a x + 1), with negative pixels clamped to zero.
Image rlog(const Image& x, double a, bool* clamped = nullptr);

struct LogSnr {
  double db = 0.0;
  bool clamped = false;  // set when negative pixels had to be clamped
};

/// snr(rlog(x), rlog(gt)).
LogSnr logsnr(const Image& x, const Image& gt, double a);

struct SnrCurvePoint {
  double af = 0.0;
  double snr = 0.0;
};
using SnrCurve = std::vector<SnrCurvePoint>;

/// AF at which the piecewise-linear curve (sorted by AF) first reaches `target_snr`.
double af_at_snr(const SnrCurve& curve, double target_snr);

/// AF_a / AF_b at equal SNR.
double acceleration_ratio(const SnrCurve& curve_a, const SnrCurve& curve_b, double target_snr);

struct ProblemResult {
  std::size_t gt_index = 0;
  std::size_t n_spokes = 0;
  double af = 0.0;
  double dr = 0.0;
  double snr_db = 0.0;
  double logsnr_db = 0.0;
  std::vector<double> trace_snr;
};

struct SpokeAggregate {
  std::size_t n_spokes = 0;
  double af = 0.0;
  double mean_snr = 0.0;
  double mean_logsnr = 0.0;
  std::size_t n_problems = 0;
};

struct EvalReport {
  std::vector<ProblemResult> problems;

  /// Arithmetic means per spoke count, ordered by spoke count.
  std::vector<SpokeAggregate> aggregate() const;
  /// Mean SNR of iterate i over all problems that traced it.
  std::vector<double> mean_trace_snr() const;
  /// CSV with header "n_spokes,af,mean_snr,mean_logsnr,n_problems".
  std::string to_csv() const;
};

}  // namespace r2d2
