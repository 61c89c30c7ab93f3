#pragma once

#include <vector>

#include "otoc/geometry.hpp"

namespace otoc {

struct Bond {
  int first;
  int second;
  friend bool operator==(const Bond&, const Bond&) = default;
};

struct Layer {
  std::vector<Bond> bonds;
  double time_units;
};

// Bonds applied between two consecutive integer observation times.
struct TimeStep {
  std::vector<Bond> bonds;
  int t;  // integer time after this step
};

struct LayerSchedule {
  int L = 0;
  Geometry geometry = Geometry::Brickwork;
  Boundary boundary = Boundary::Open;
  std::vector<Layer> layers;

  double total_time_units() const;
  // Splits layers into integer time units. A staircase sweep is two units:
  // the first ceil(n/2) bonds, then the rest.
  std::vector<TimeStep> time_steps() const;
};

LayerSchedule build_schedule(Geometry g, Boundary b, int L, int total_time_units);

// bonds of a single staircase sweep or brickwork layer of given parity
std::vector<Bond> staircase_sweep(Boundary b, int L);
std::vector<Bond> brickwork_layer(Boundary b, int L, int parity);

}  // namespace otoc
