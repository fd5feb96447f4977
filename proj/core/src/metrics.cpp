#include "r2d2/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "r2d2/error.hpp"

namespace r2d2 {

double snr(const Image& x, const Image& gt) {
  require_data(x.same_shape(gt), "snr: dimension mismatch");
  const double ref = norm2(gt);
  require_data(ref > 0.0, "snr: reference image is all zero");
  const double err = norm2(gt - x);
  if (err == 0.0) return kPerfectSnr;
  return 20.0 * std::log10(ref / err);
}

Image rlog(const Image& x, double a, bool* clamped) {
  require(std::isfinite(a) && a > 0.0 && a != 1.0, "rlog: base must be positive and not 1");
  const double inv_log = 1.0 / std::log(a);
  Image out(x.height(), x.width());
  bool any = false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double v = x[k];
    if (v < 0.0) {
      any = true;
      v = 0.0;
    }
    out[k] = std::log1p(a * v) * inv_log;
  }
  if (clamped) *clamped = any;
  return out;
}

LogSnr logsnr(const Image& x, const Image& gt, double a) {
  LogSnr out;
  bool gt_clamped = false;
  const Image lx = rlog(x, a, &out.clamped);
  const Image lg = rlog(gt, a, &gt_clamped);
  out.clamped = out.clamped || gt_clamped;
  out.db = snr(lx, lg);
  return out;
}

double af_at_snr(const SnrCurve& curve, double target) {
  require(curve.size() >= 2, "af_at_snr: curve needs at least two points");
  require(std::is_sorted(curve.begin(), curve.end(),
                         [](const auto& a, const auto& b) { return a.af < b.af; }),
          "af_at_snr: curve must be sorted by AF");
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const auto& p = curve[k];
    const auto& q = curve[k + 1];
    if (p.snr == target) return p.af;
    const bool crosses = (p.snr > target && q.snr <= target) || (p.snr < target && q.snr >= target);
    if (crosses) return p.af + (target - p.snr) * (q.af - p.af) / (q.snr - p.snr);
  }
  if (curve.back().snr == target) return curve.back().af;
  throw InvalidArgument("target SNR outside the curve's range");
}

double acceleration_ratio(const SnrCurve& curve_a, const SnrCurve& curve_b, double target_snr) {
  return af_at_snr(curve_a, target_snr) / af_at_snr(curve_b, target_snr);
}

std::vector<SpokeAggregate> EvalReport::aggregate() const {
  std::map<std::size_t, SpokeAggregate> groups;
  for (const auto& p : problems) {
    auto& g = groups[p.n_spokes];
    g.n_spokes = p.n_spokes;
    g.af = p.af;
    g.mean_snr += p.snr_db;
    g.mean_logsnr += p.logsnr_db;
    ++g.n_problems;
  }
  std::vector<SpokeAggregate> out;
  for (auto& [spokes, g] : groups) {
    g.mean_snr /= static_cast<double>(g.n_problems);
    g.mean_logsnr /= static_cast<double>(g.n_problems);
    out.push_back(g);
  }
  return out;
}

std::vector<double> EvalReport::mean_trace_snr() const {
  std::vector<double> total;
  std::vector<std::size_t> count;
  for (const auto& p : problems) {
    if (p.trace_snr.size() > total.size()) {
      total.resize(p.trace_snr.size(), 0.0);
      count.resize(p.trace_snr.size(), 0);
    }
    for (std::size_t i = 0; i < p.trace_snr.size(); ++i) {
      total[i] += p.trace_snr[i];
      ++count[i];
    }
  }
  for (std::size_t i = 0; i < total.size(); ++i) total[i] /= static_cast<double>(count[i]);
  return total;
}

std::string EvalReport::to_csv() const {
  std::string out = "n_spokes,af,mean_snr,mean_logsnr,n_problems\n";
  char line[160];
  for (const auto& g : aggregate()) {
    std::snprintf(line, sizeof line, "%zu,%.10g,%.10g,%.10g,%zu\n", g.n_spokes, g.af, g.mean_snr,
                  g.mean_logsnr, g.n_problems);
    out += line;
  }
  return out;
}

}  // namespace r2d2
