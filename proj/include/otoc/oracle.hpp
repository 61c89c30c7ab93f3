#pragma once

#include <string>
#include <vector>

#include "otoc/otoc_spin.hpp"

namespace otoc {

struct OracleCase {
  Geometry geometry;
  Boundary boundary;
  double az;
  double max_log_dev;  // max |ln|Z_tt| - ln|Z_dense|| over the run
  bool signs_match;
  int points;
};

// max deviation between the dense and tensor-train spin OTOC series
double series_deviation(const RelaxationSeries& a, const RelaxationSeries& b, bool* signs_match = nullptr);

// all geometry/boundary combinations for each az, over 6L time units,
// with bond dimension 2^ceil(L/2)
std::vector<OracleCase> oracle_check(int L, const std::vector<double>& azs, int x_w = 4);

}  // namespace otoc
