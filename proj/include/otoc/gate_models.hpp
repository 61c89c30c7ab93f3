#pragma once

#include <array>

#include "otoc/geometry.hpp"

namespace otoc {

// Local basis indices. Spin: minus = 0, plus = 1. Cluster: empty (o) = 0,
// occupied = 1. A pair (first, second) has index 2*first + second, so the
// spin order is (--, -+, +-, ++) and the cluster order is (oo, o*, *o, **).
inline constexpr int kMinus = 0;
inline constexpr int kPlus = 1;
inline constexpr int kEmpty = 0;
inline constexpr int kOccupied = 1;

constexpr int pair_index(int first, int second) { return 2 * first + second; }

struct GateParams {
  double ax = 1.0;
  double ay = 1.0;
  double az = 0.5;
  int q = 2;

  double u() const;
  double v() const;
  bool dual_unitary() const { return ax == 1.0 && ay == 1.0; }
  void validate() const;
};

enum class Flavor { Spin, Cluster };

// Column-source, row-target: entry (r, c) is the weight sent from pair
// configuration c to pair configuration r.
class TransitionMatrix4 {
 public:
  TransitionMatrix4() = default;
  TransitionMatrix4(Flavor flavor, const std::array<double, 16>& row_major)
      : w_(row_major), flavor_(flavor) {}

  double operator()(int row, int col) const { return w_[4 * row + col]; }
  Flavor flavor() const { return flavor_; }
  const std::array<double, 16>& data() const { return w_; }
  double column_sum(int col) const;
  TransitionMatrix4 transposed() const;

 private:
  std::array<double, 16> w_{};
  Flavor flavor_ = Flavor::Spin;
};

struct DecayRates {
  double r_dw;
  double r_mag;
};

struct RatePrediction {
  double r1;
  double r2;
  Geometry geometry;
  Boundary boundary;
};

TransitionMatrix4 haar_transition(int q);
TransitionMatrix4 param_transition(const GateParams& p);
// D M D^-1 with D = diag(q^{number of minus}); see README for the row swap
TransitionMatrix4 modified_transition(const GateParams& p);
TransitionMatrix4 cluster_transfer(double az);

// single-site map from spin coordinates to cluster coordinates,
// row-major 2x2: rows (o, occupied), columns (minus, plus)
std::array<double, 4> spin_to_cluster(int q);

double magnon_rate(double az);
DecayRates rates(const GateParams& p);
RatePrediction predicted_rates(Geometry g, Boundary b, double az);

}  // namespace otoc
