#pragma once

#include <cmath>
#include <vector>

#include "otoc/chain.hpp"
#include "otoc/errors.hpp"
#include "otoc/relaxation.hpp"

namespace otoc {

struct EngineOptions {
  TruncationPolicy policy;
  double signal_floor = std::log(1e-300);
  // consecutive points under the truncation noise estimate before a run stops
  int noise_patience = 3;
};

inline double product_log_norm(std::span<const LocalVector> p) {
  double s = 0.0;
  for (const auto& v : p) s += 0.5 * std::log(v[0] * v[0] + v[1] * v[1]);
  return s;
}

// Spin basis: zero the all-minus and all-plus components.
// Cluster basis: remove both stationary directions of the transfer matrix,
// the all-o vector and the product (1, q^2-1) per site, using the left fixed
// vectors (all-o| and the all-ones row as the spectral projector.
template <MarkovChain C>
void subtract_sinks(C& chain, Flavor flavor, int q) {
  const int L = chain.size();
  std::vector<ProductTerm> terms;
  if (flavor == Flavor::Spin) {
    for (int s : {kMinus, kPlus}) {
      const double a = chain.raw_amplitude(Configuration(L, s));
      if (a != 0.0)
        terms.push_back({-a, uniform_product(L, s == kMinus ? LocalVector{1, 0} : LocalVector{0, 1})});
    }
  } else {
    const double a = chain.raw_amplitude(Configuration(L, kEmpty));
    const double total = chain.raw_overlap(uniform_product(L, {1.0, 1.0}));
    const double q2 = double(q) * q;
    const double b = (total - a) / (std::pow(q2, L) - 1.0);
    if (b != 0.0) terms.push_back({-b, uniform_product(L, {1.0, q2 - 1.0})});
    if (a - b != 0.0) terms.push_back({-(a - b), uniform_product(L, {1.0, 0.0})});
  }
  chain.add_products(terms);
}

// Transpose of subtract_sinks for a row vector held in a chain, so that
// <bra'| T^k |psi> equals <bra| T^k |psi> with sinks removed from psi.
template <MarkovChain C>
void subtract_sinks_left(C& bra, Flavor flavor, int q) {
  if (flavor == Flavor::Spin) {
    subtract_sinks(bra, flavor, q);
    return;
  }
  const int L = bra.size();
  const double q2 = double(q) * q;
  const double n = std::pow(q2, L) - 1.0;
  const double cs = bra.raw_overlap(uniform_product(L, {1.0, q2 - 1.0}));
  const double c0 = bra.raw_amplitude(Configuration(L, kEmpty));
  const double ones = (cs - c0) / n;
  std::vector<ProductTerm> terms;
  if (ones != 0.0) terms.push_back({-ones, uniform_product(L, {1.0, 1.0})});
  if (c0 - ones != 0.0) terms.push_back({-(c0 - ones), uniform_product(L, {1.0, 0.0})});
  bra.add_products(terms);
}

template <MarkovChain C>
RelaxationSeries run_series(C& chain, const std::vector<TimeStep>& steps, const TransitionMatrix4& m,
                            int q, std::span<const LocalVector> bra, const EngineOptions& opt,
                            bool record_initial = true) {
  RelaxationSeries series;
  const double bra_log_norm = product_log_norm(bra);
  if (record_initial) series.push(0.0, chain.overlap(bra), chain.truncation_error());
  int noisy = 0;
  for (const TimeStep& step : steps) {
    chain.set_time_step(step.t);
    chain.apply_layer(step.bonds, m);
    subtract_sinks(chain, m.flavor(), q);
    chain.renormalize();
    const SignedLog v = chain.overlap(bra);
    const double err = chain.truncation_error();
    if (v.sign == 0 || v.log_abs < opt.signal_floor) {
      series.status = RunStatus::SignalFloor;
      series.stopped_at = step.t;
      break;
    }
    series.push(step.t, v, err);
    if (err > 0.0 && v.log_abs < std::log(err) + bra_log_norm + chain.log_norm()) {
      if (++noisy >= std::max(1, opt.noise_patience)) {
        series.points.resize(series.points.size() - noisy);
        series.status = RunStatus::TruncationNoise;
        series.stopped_at = int(series.points.empty() ? step.t : series.points.back().t + 1);
        break;
      }
    } else {
      noisy = 0;
    }
  }
  return series;
}

}  // namespace otoc
