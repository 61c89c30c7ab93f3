#include "otoc/relaxation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "otoc/errors.hpp"

namespace otoc {

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::SignalFloor: return "signal-floor";
    case RunStatus::TruncationNoise: return "truncation-noise";
  }
  return "unknown";
}

LineFit fit_window(const RelaxationSeries& s, Window w) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : s.points) {
    if (p.t <= w.lo || p.t > w.hi || p.sign == 0) continue;
    sx += p.t;
    sy += p.log_abs;
    sxx += p.t * p.t;
    sxy += p.t * p.log_abs;
    ++n;
  }
  LineFit f;
  f.n = n;
  if (n < 2) return f;
  const double det = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  double rss = 0.0;
  for (const auto& p : s.points) {
    if (p.t <= w.lo || p.t > w.hi || p.sign == 0) continue;
    const double r = p.log_abs - (f.intercept + f.slope * p.t);
    rss += r * r;
  }
  f.rms_residual = std::sqrt(rss / n);
  return f;
}

double window_rate(const RelaxationSeries& s, Window w, int min_points) {
  const LineFit f = fit_window(s, w);
  if (f.n < min_points) {
    std::ostringstream msg;
    msg << "window (" << w.lo << ", " << w.hi << "] has " << f.n << " points, need " << min_points;
    throw Error(ErrorCode::FitInsufficient, msg.str());
  }
  return -f.slope / std::numbers::ln2;
}

TwoStageFit fit_two_stage(const RelaxationSeries& s, const FitOptions& opt) {
  if (opt.L < 1) throw Error(ErrorCode::InvalidParameter, "fit needs L >= 1");
  const double c = opt.c > 0.0 ? opt.c : (opt.boundary == Boundary::Open ? 2.0 : 1.0);
  const double bp = c * opt.L;
  const double end = s.points.empty() ? 0.0 : s.points.back().t;
  TwoStageFit fit;
  fit.breakpoint = bp;
  fit.window1 = {opt.x_w + opt.margin, bp};
  fit.window2 = {bp + opt.margin, end};
  const LineFit f1 = fit_window(s, fit.window1);
  const LineFit f2 = fit_window(s, fit.window2);
  if (f1.n < opt.min_points || f2.n < opt.min_points) {
    std::ostringstream msg;
    msg << "fit windows hold " << f1.n << " and " << f2.n << " points, need "
        << opt.min_points << " each; run with T >= " << int(std::ceil(bp + opt.margin + opt.min_points))
        << " and a signal that survives that long";
    throw Error(ErrorCode::FitInsufficient, msg.str());
  }
  fit.r1 = -f1.slope / std::numbers::ln2;
  fit.r2 = -f2.slope / std::numbers::ln2;
  fit.rms_residual1 = f1.rms_residual;
  fit.rms_residual2 = f2.rms_residual;
  fit.rms_residual = std::sqrt((f1.rms_residual * f1.rms_residual * f1.n +
                                f2.rms_residual * f2.rms_residual * f2.n) / (f1.n + f2.n));
  return fit;
}

}  // namespace otoc
