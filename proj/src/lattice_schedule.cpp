#include "otoc/lattice_schedule.hpp"

#include <string>

#include "otoc/errors.hpp"

namespace otoc {

std::vector<Bond> brickwork_layer(Boundary b, int L, int parity) {
  std::vector<Bond> bonds;
  for (int i = parity; i + 1 < L; i += 2) bonds.push_back({i, i + 1});
  if (b == Boundary::Periodic && parity == 1) bonds.push_back({L - 1, 0});
  return bonds;
}

std::vector<Bond> staircase_sweep(Boundary b, int L) {
  std::vector<Bond> bonds;
  for (int i = 0; i + 1 < L; ++i) bonds.push_back({i, i + 1});
  if (b == Boundary::Periodic) bonds.push_back({L - 1, 0});
  return bonds;
}

LayerSchedule build_schedule(Geometry g, Boundary b, int L, int total_time_units) {
  if (L < 4) throw Error(ErrorCode::TooSmall, "L must be >= 4, got " + std::to_string(L));
  if (g == Geometry::Brickwork && b == Boundary::Periodic && L % 2 != 0)
    throw Error(ErrorCode::InvalidGeometry, "brickwork with periodic boundary needs even L");
  if (total_time_units < 0)
    throw Error(ErrorCode::InvalidParameter, "total time must be >= 0");

  LayerSchedule s{L, g, b, {}};
  if (g == Geometry::Brickwork) {
    for (int t = 0; t < total_time_units; ++t)
      s.layers.push_back({brickwork_layer(b, L, t % 2), 1.0});
    return s;
  }
  const std::vector<Bond> sweep = staircase_sweep(b, L);
  for (int t = 0; t + 1 < total_time_units; t += 2) s.layers.push_back({sweep, 2.0});
  if (total_time_units % 2 == 1) {
    // trailing half sweep
    const std::size_t half = (sweep.size() + 1) / 2;
    s.layers.push_back({{sweep.begin(), sweep.begin() + half}, 1.0});
  }
  return s;
}

double LayerSchedule::total_time_units() const {
  double t = 0.0;
  for (const auto& l : layers) t += l.time_units;
  return t;
}

std::vector<TimeStep> LayerSchedule::time_steps() const {
  std::vector<TimeStep> out;
  int t = 0;
  for (const auto& layer : layers) {
    if (layer.time_units == 1.0) {
      out.push_back({layer.bonds, ++t});
      continue;
    }
    const std::size_t half = (layer.bonds.size() + 1) / 2;
    out.push_back({{layer.bonds.begin(), layer.bonds.begin() + half}, ++t});
    out.push_back({{layer.bonds.begin() + half, layer.bonds.end()}, ++t});
  }
  return out;
}

}  // namespace otoc
