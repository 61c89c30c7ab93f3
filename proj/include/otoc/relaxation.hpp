#pragma once

#include <string>
#include <vector>

#include "otoc/chain.hpp"
#include "otoc/geometry.hpp"

namespace otoc {

enum class RunStatus { Completed, SignalFloor, TruncationNoise };

std::string_view to_string(RunStatus s);

struct SeriesPoint {
  double t;
  double log_abs;  // natural log of the magnitude
  int sign;
  double trunc_err;
};

struct RelaxationSeries {
  std::vector<SeriesPoint> points;
  RunStatus status = RunStatus::Completed;
  int stopped_at = -1;  // time step that tripped the floor, if any

  void push(double t, SignedLog v, double trunc_err) {
    points.push_back({t, v.log_abs, v.sign, trunc_err});
  }
};

struct Window {
  double lo;  // exclusive
  double hi;  // inclusive
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  int n = 0;
};

struct TwoStageFit {
  double r1 = 0.0;
  double r2 = 0.0;
  Window window1{};
  Window window2{};
  double breakpoint = 0.0;
  double rms_residual1 = 0.0;
  double rms_residual2 = 0.0;
  double rms_residual = 0.0;
};

struct FitOptions {
  int L = 0;
  Boundary boundary = Boundary::Open;
  int x_w = 4;
  double margin = 3.0;
  double c = 0.0;      // 0 means 2 for open and 1 for periodic boundaries
  int min_points = 10;
};

// least squares of log_abs against t over lo < t <= hi
LineFit fit_window(const RelaxationSeries& s, Window w);
TwoStageFit fit_two_stage(const RelaxationSeries& s, const FitOptions& opt);
// decay rate of a single window, in units of ln 2 per time unit
double window_rate(const RelaxationSeries& s, Window w, int min_points = 10);

}  // namespace otoc
