#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "otoc/chain.hpp"
#include "otoc/dense_chain.hpp"

namespace otoc {

// Tensor-train weight vector with an orthogonality center. Each core holds
// one Dl x Dr matrix per local index. The stored tensors are normalized; the
// removed scale lives in log_norm().
class TensorTrainChain {
 public:
  using Core = std::array<Eigen::MatrixXd, 2>;

  static TensorTrainChain product(std::span<const LocalVector> sites,
                                  const TruncationPolicy& policy = {});

  int size() const { return int(cores_.size()); }
  void apply_bond(Bond bond, const TransitionMatrix4& m);
  void apply_layer(std::span<const Bond> bonds, const TransitionMatrix4& m);
  // this += sum_k coeff_k * product_k, in the stored (normalized) scale
  void add_products(std::span<const ProductTerm> terms);
  double renormalize();

  double log_norm() const { return log_norm_; }
  double norm() const;
  double raw_overlap(std::span<const LocalVector> bra) const;
  SignedLog overlap(std::span<const LocalVector> bra) const;
  double raw_amplitude(const Configuration& z) const;
  double truncation_error() const { return trunc_err_; }
  std::vector<double> to_dense() const;
  void set_time_step(int t) { time_step_ = t; }

  int max_bond_dimension() const;
  std::vector<int> bond_dimensions() const;
  const std::vector<Core>& cores() const { return cores_; }
  const TruncationPolicy& policy() const { return policy_; }

  // little-endian f64 payload; see README for the layout
  void save(std::ostream& out) const;
  static TensorTrainChain load(std::istream& in);

 private:
  void move_center(int target);
  void apply_adjacent(int i, const std::array<double, 16>& g);
  void swap_adjacent(int i);
  void compress();
  int keep_count(const Eigen::VectorXd& s);

  std::vector<Core> cores_;
  int center_ = 0;
  double log_norm_ = 0.0;
  double trunc_err_ = 0.0;
  TruncationPolicy policy_;
  int time_step_ = 0;
};

struct SiteProfile {
  SignedLog inner;              // <bra|ket> including both log-norms
  std::vector<double> ratios;   // <bra|D_x|ket> / <bra|ket> for each site x
};

SiteProfile site_profile(const TensorTrainChain& bra, const TensorTrainChain& ket, LocalVector diag);
SiteProfile site_profile(const DenseChain& bra, const DenseChain& ket, LocalVector diag);

}  // namespace otoc
