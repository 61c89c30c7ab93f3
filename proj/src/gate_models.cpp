#include "otoc/gate_models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "otoc/errors.hpp"

namespace otoc {

std::string_view to_string(Geometry g) {
  return g == Geometry::Brickwork ? "bw" : "s";
}

std::string_view to_string(Boundary b) {
  return b == Boundary::Open ? "obc" : "pbc";
}

Geometry parse_geometry(std::string_view s) {
  if (s == "bw") return Geometry::Brickwork;
  if (s == "s") return Geometry::Staircase;
  throw Error(ErrorCode::InvalidParameter, "unknown geometry '" + std::string(s) + "'");
}

Boundary parse_boundary(std::string_view s) {
  if (s == "obc") return Boundary::Open;
  if (s == "pbc") return Boundary::Periodic;
  throw Error(ErrorCode::InvalidParameter, "unknown boundary '" + std::string(s) + "'");
}

namespace {

double cpi(double a) { return std::cos(std::numbers::pi * a); }

void require_finite(double x, const char* name) {
  if (!std::isfinite(x))
    throw Error(ErrorCode::InvalidParameter, std::string(name) + " is not finite");
}

}  // namespace

double GateParams::u() const { return cpi(ax) + cpi(ay) + cpi(az); }

double GateParams::v() const {
  const double cx = cpi(ax), cy = cpi(ay), cz = cpi(az);
  return cx * cy + cy * cz + cz * cx;
}

void GateParams::validate() const {
  require_finite(ax, "ax");
  require_finite(ay, "ay");
  require_finite(az, "az");
  for (double a : {ax, ay, az})
    if (a < 0.0 || a > 1.0) throw Error(ErrorCode::InvalidParameter, "gate angles must lie in [0, 1]");
  if (q < 2) throw Error(ErrorCode::InvalidParameter, "q must be >= 2");
}

double TransitionMatrix4::column_sum(int col) const {
  double s = 0.0;
  for (int r = 0; r < 4; ++r) s += (*this)(r, col);
  return s;
}

TransitionMatrix4 TransitionMatrix4::transposed() const {
  std::array<double, 16> t{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) t[4 * c + r] = w_[4 * r + c];
  return {flavor_, t};
}

TransitionMatrix4 haar_transition(int q) {
  if (q < 2) throw Error(ErrorCode::InvalidParameter, "q must be >= 2");
  const double h = double(q) / (double(q) * q + 1.0);
  // rows/cols: --, -+, +-, ++
  return {Flavor::Spin, {1, h, h, 0,
                         0, 0, 0, 0,
                         0, 0, 0, 0,
                         0, h, h, 1}};
}

TransitionMatrix4 param_transition(const GateParams& p) {
  p.validate();
  if (p.q != 2)
    throw Error(ErrorCode::UnsupportedEnsemble, "parameterized ensemble requires q = 2");
  const double u = p.u(), v = p.v();
  const double h = (3.0 - v) / 9.0;
  const double bp = (3.0 + 6.0 * u + 5.0 * v) / 36.0;
  const double bm = (3.0 - 6.0 * u + 5.0 * v) / 36.0;
  // |-+> -> h|--> + b+|-+> + b-|+-> + h|++>
  return {Flavor::Spin, {1, h,  h,  0,
                         0, bp, bm, 0,
                         0, bm, bp, 0,
                         0, h,  h,  1}};
}

TransitionMatrix4 modified_transition(const GateParams& p) {
  const TransitionMatrix4 m = param_transition(p);
  const double q = p.q;
  // number of minus per pair configuration --, -+, +-, ++
  const std::array<double, 4> d = {q * q, q, q, 1.0};
  std::array<double, 16> w{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) w[4 * r + c] = d[r] * m(r, c) / d[c];
  return {Flavor::Spin, w};
}

TransitionMatrix4 cluster_transfer(double az) {
  require_finite(az, "az");
  const double c = cpi(az);
  const double x = (2.0 - c) / 3.0;
  const double y = (1.0 + c) / 3.0;
  return {Flavor::Cluster, {1, 0, 0, 0,
                            0, 0, x, y / 3.0,
                            0, x, 0, y / 3.0,
                            0, y, y, (7.0 - 2.0 * c) / 9.0}};
}

std::array<double, 4> spin_to_cluster(int q) {
  const double qd = q;
  // |+> = q|o>, |-> = |o> + (q^2-1)|*>
  return {1.0, qd, qd * qd - 1.0, 0.0};
}

double magnon_rate(double az) {
  return std::log(3.0 / (2.0 - cpi(az))) / std::numbers::ln2;
}

DecayRates rates(const GateParams& p) {
  p.validate();
  if (!p.dual_unitary() || p.q != 2)
    throw Error(ErrorCode::Unsupported,
                "closed-form rates exist only for ax = ay = 1, q = 2");
  return {1.0, magnon_rate(p.az)};
}

RatePrediction predicted_rates(Geometry g, Boundary b, double az) {
  require_finite(az, "az");
  const double rm = magnon_rate(az);
  double r2 = rm;
  if (b == Boundary::Open)
    r2 = az < 1.0 / 3.0 ? 1.0 : rm;
  else if (g == Geometry::Staircase)
    r2 = rm / 2.0;
  return {rm / 2.0, r2, g, b};
}

}  // namespace otoc
