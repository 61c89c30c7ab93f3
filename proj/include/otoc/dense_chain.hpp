#pragma once

#include <span>
#include <vector>

#include "otoc/chain.hpp"

namespace otoc {

// Brute-force 2^L weight vector. Site i is bit (L-1-i) of the index, so
// index = sum_i z_i 2^(L-1-i).
class DenseChain {
 public:
  static constexpr int kMaxSites = 14;

  static DenseChain product(std::span<const LocalVector> sites, const TruncationPolicy& = {});
  static DenseChain from_weights(int L, std::vector<double> w);

  int size() const { return L_; }
  void apply_bond(Bond bond, const TransitionMatrix4& m);
  void apply_layer(std::span<const Bond> bonds, const TransitionMatrix4& m);
  void add_products(std::span<const ProductTerm> terms);
  double renormalize();

  double log_norm() const { return log_norm_; }
  double norm() const;
  double raw_overlap(std::span<const LocalVector> bra) const;
  SignedLog overlap(std::span<const LocalVector> bra) const;
  double raw_amplitude(const Configuration& z) const;
  double truncation_error() const { return 0.0; }
  // normalized weights, without the log-norm factor
  std::vector<double> to_dense() const { return w_; }
  const std::vector<double>& weights() const { return w_; }
  std::vector<double>& weights() { return w_; }
  void set_time_step(int t) { time_step_ = t; }

  std::size_t index_of(const Configuration& z) const;
  int bit(std::size_t index, int site) const { return int((index >> (L_ - 1 - site)) & 1u); }

 private:
  int L_ = 0;
  std::vector<double> w_;
  double log_norm_ = 0.0;
  int time_step_ = 0;
};

}  // namespace otoc
