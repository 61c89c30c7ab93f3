#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <span>
#include <vector>

#include "otoc/gate_models.hpp"
#include "otoc/lattice_schedule.hpp"

namespace otoc {

using LocalVector = std::array<double, 2>;
using ProductVector = std::vector<LocalVector>;
using Configuration = std::vector<int>;

// sign * exp(log_abs); sign == 0 means exactly zero
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLog from_value(double x) {
    if (x == 0.0) return {};
    return {std::log(std::abs(x)), x > 0 ? 1 : -1};
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  double log10_abs() const { return log_abs / std::log(10.0); }
  SignedLog scaled(double log_factor) const {
    return sign == 0 ? *this : SignedLog{log_abs + log_factor, sign};
  }
};

struct ProductTerm {
  double coeff;
  ProductVector factors;
};

struct TruncationPolicy {
  int chi = 128;
  double cutoff = 1e-14;
  double ceiling = 1e-6;
};

ProductVector uniform_product(int L, LocalVector v);
ProductVector basis_product(const Configuration& config);

template <class C>
concept MarkovChain = requires(C c, const C cc, std::span<const Bond> bonds,
                               const TransitionMatrix4& m, std::span<const LocalVector> prod,
                               std::span<const ProductTerm> terms, const Configuration& z) {
  { C::product(prod, TruncationPolicy{}) } -> std::same_as<C>;
  { cc.size() } -> std::convertible_to<int>;
  c.apply_layer(bonds, m);
  c.add_products(terms);
  { c.renormalize() } -> std::convertible_to<double>;
  { cc.log_norm() } -> std::convertible_to<double>;
  { cc.raw_overlap(prod) } -> std::convertible_to<double>;
  { cc.overlap(prod) } -> std::same_as<SignedLog>;
  { cc.raw_amplitude(z) } -> std::convertible_to<double>;
  { cc.truncation_error() } -> std::convertible_to<double>;
  { cc.to_dense() } -> std::same_as<std::vector<double>>;
  c.set_time_step(0);
};

}  // namespace otoc
