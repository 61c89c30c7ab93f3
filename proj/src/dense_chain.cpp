#include "otoc/dense_chain.hpp"

#include <cmath>
#include <string>

#include "otoc/errors.hpp"

namespace otoc {

ProductVector uniform_product(int L, LocalVector v) { return ProductVector(L, v); }

ProductVector basis_product(const Configuration& config) {
  ProductVector p;
  p.reserve(config.size());
  for (int s : config) p.push_back(s == 0 ? LocalVector{1.0, 0.0} : LocalVector{0.0, 1.0});
  return p;
}

namespace {

void check_size(int L) {
  if (L < 1 || L > DenseChain::kMaxSites)
    throw Error(ErrorCode::Unsupported,
                "dense chain supports 1 <= L <= " + std::to_string(DenseChain::kMaxSites));
}

}  // namespace

DenseChain DenseChain::product(std::span<const LocalVector> sites, const TruncationPolicy&) {
  const int L = int(sites.size());
  check_size(L);
  std::vector<double> w(std::size_t(1) << L, 1.0);
  for (std::size_t k = 0; k < w.size(); ++k)
    for (int i = 0; i < L; ++i) w[k] *= sites[i][(k >> (L - 1 - i)) & 1u];
  return from_weights(L, std::move(w));
}

DenseChain DenseChain::from_weights(int L, std::vector<double> w) {
  check_size(L);
  if (w.size() != (std::size_t(1) << L))
    throw Error(ErrorCode::InvalidParameter, "weight vector length is not 2^L");
  DenseChain c;
  c.L_ = L;
  c.w_ = std::move(w);
  return c;
}

void DenseChain::apply_bond(Bond bond, const TransitionMatrix4& m) {
  const auto [a, b] = bond;
  if (a < 0 || b < 0 || a >= L_ || b >= L_ || a == b)
    throw DiagnosticsError(ErrorCode::BondOutOfRange, "bond out of range", time_step_);
  const std::size_t ma = std::size_t(1) << (L_ - 1 - a);
  const std::size_t mb = std::size_t(1) << (L_ - 1 - b);
  for (std::size_t k = 0; k < w_.size(); ++k) {
    if (k & (ma | mb)) continue;
    const std::size_t idx[4] = {k, k | mb, k | ma, k | ma | mb};
    double in[4], out[4] = {0, 0, 0, 0};
    for (int j = 0; j < 4; ++j) in[j] = w_[idx[j]];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[r] += m(r, c) * in[c];
    for (int j = 0; j < 4; ++j) w_[idx[j]] = out[j];
  }
}

void DenseChain::apply_layer(std::span<const Bond> bonds, const TransitionMatrix4& m) {
  for (const Bond& b : bonds) apply_bond(b, m);
}

void DenseChain::add_products(std::span<const ProductTerm> terms) {
  for (const auto& term : terms) {
    DenseChain p = product(term.factors);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] += term.coeff * p.w_[k];
  }
}

double DenseChain::norm() const {
  double s = 0.0;
  for (double x : w_) s += x * x;
  return std::sqrt(s);
}

double DenseChain::renormalize() {
  const double n = norm();
  if (n == 0.0 || !std::isfinite(n))
    throw DiagnosticsError(ErrorCode::SignalLost, "state vanished or overflowed", time_step_);
  for (double& x : w_) x /= n;
  log_norm_ += std::log(n);
  return std::log(n);
}

double DenseChain::raw_overlap(std::span<const LocalVector> bra) const {
  double s = 0.0;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    double f = w_[k];
    for (int i = 0; i < L_ && f != 0.0; ++i) f *= bra[i][bit(k, i)];
    s += f;
  }
  return s;
}

SignedLog DenseChain::overlap(std::span<const LocalVector> bra) const {
  return SignedLog::from_value(raw_overlap(bra)).scaled(log_norm_);
}

std::size_t DenseChain::index_of(const Configuration& z) const {
  std::size_t k = 0;
  for (int i = 0; i < L_; ++i) k = (k << 1) | std::size_t(z[i] & 1);
  return k;
}

double DenseChain::raw_amplitude(const Configuration& z) const { return w_[index_of(z)]; }

}  // namespace otoc
