#include "otoc/tensor_train.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "otoc/dense_chain.hpp"
#include "otoc/errors.hpp"

#include <lapacke.h>

namespace otoc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr std::array<double, 16> kSwap = {1, 0, 0, 0,
                                          0, 0, 1, 0,
                                          0, 1, 0, 0,
                                          0, 0, 0, 1};

// gate for the bond read in the opposite site order
std::array<double, 16> reversed(const std::array<double, 16>& g) {
  auto flip = [](int p) { return 2 * (p & 1) + (p >> 1); };
  std::array<double, 16> out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[4 * flip(r) + flip(c)] = g[4 * r + c];
  return out;
}

struct ThinSvd {
  MatrixXd u;
  VectorXd s;
  MatrixXd vt;
};

// dgesdd with a dgesvd fallback
ThinSvd svd(const MatrixXd& a) {
  const lapack_int m = lapack_int(a.rows()), n = lapack_int(a.cols()), k = std::min(m, n);
  ThinSvd r{MatrixXd(m, k), VectorXd(k), MatrixXd(k, n)};
  MatrixXd work = a;
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, r.s.data(), r.u.data(), m,
                                   r.vt.data(), k);
  if (info != 0) {
    work = a;
    std::vector<double> superb(std::max<lapack_int>(k, 2));
    info = LAPACKE_dgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, work.data(), m, r.s.data(), r.u.data(), m,
                          r.vt.data(), k, superb.data());
  }
  if (info != 0) throw Error(ErrorCode::NumericalIntegrity, "SVD did not converge");
  return r;
}

MatrixXd thin_q(const Eigen::HouseholderQR<MatrixXd>& qr, Eigen::Index rows, Eigen::Index r) {
  return qr.householderQ() * MatrixXd::Identity(rows, r);
}

MatrixXd thin_r(const Eigen::HouseholderQR<MatrixXd>& qr, Eigen::Index r) {
  return qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
}

}  // namespace

TensorTrainChain TensorTrainChain::product(std::span<const LocalVector> sites,
                                           const TruncationPolicy& policy) {
  if (sites.empty()) throw Error(ErrorCode::TooSmall, "empty chain");
  if (policy.chi < 1) throw Error(ErrorCode::InvalidParameter, "chi must be >= 1");
  TensorTrainChain c;
  c.policy_ = policy;
  for (const auto& v : sites) {
    const double n = std::hypot(v[0], v[1]);
    if (n == 0.0) throw Error(ErrorCode::InvalidParameter, "zero local vector in product state");
    Core core = {MatrixXd::Constant(1, 1, v[0] / n), MatrixXd::Constant(1, 1, v[1] / n)};
    c.cores_.push_back(std::move(core));
    c.log_norm_ += std::log(n);
  }
  return c;
}

int TensorTrainChain::keep_count(const VectorXd& s) {
  const int n = int(s.size());
  if (n == 0 || s(0) == 0.0) return 1;
  int k = 0;
  while (k < n && k < policy_.chi && s(k) > policy_.cutoff * s(0)) ++k;
  k = std::max(k, 1);
  const double total = s.squaredNorm();
  const double dropped = s.tail(n - k).squaredNorm();
  if (dropped > 0.0) {
    trunc_err_ += std::sqrt(dropped / total);
    if (trunc_err_ > policy_.ceiling)
      throw DiagnosticsError(ErrorCode::TruncationCeiling,
                             "cumulative truncation error " + std::to_string(trunc_err_) +
                                 " exceeds ceiling",
                             time_step_);
  }
  return k;
}

void TensorTrainChain::move_center(int target) {
  while (center_ < target) {
    Core& a = cores_[center_];
    const auto dl = a[0].rows(), dr = a[0].cols();
    MatrixXd m(2 * dl, dr);
    m << a[0], a[1];
    Eigen::HouseholderQR<MatrixXd> qr(m);
    const auto r = std::min<Eigen::Index>(2 * dl, dr);
    const MatrixXd q = thin_q(qr, 2 * dl, r);
    const MatrixXd rr = thin_r(qr, r);
    a[0] = q.topRows(dl);
    a[1] = q.bottomRows(dl);
    Core& b = cores_[center_ + 1];
    b[0] = rr * b[0];
    b[1] = rr * b[1];
    ++center_;
  }
  while (center_ > target) {
    Core& a = cores_[center_];
    const auto dl = a[0].rows(), dr = a[0].cols();
    MatrixXd m(dl, 2 * dr);
    m << a[0], a[1];
    Eigen::HouseholderQR<MatrixXd> qr(m.transpose());
    const auto r = std::min<Eigen::Index>(2 * dr, dl);
    const MatrixXd q = thin_q(qr, 2 * dr, r);
    const MatrixXd rr = thin_r(qr, r);
    a[0] = q.topRows(dr).transpose();
    a[1] = q.bottomRows(dr).transpose();
    Core& b = cores_[center_ - 1];
    b[0] = b[0] * rr.transpose();
    b[1] = b[1] * rr.transpose();
    --center_;
  }
}

void TensorTrainChain::apply_adjacent(int i, const std::array<double, 16>& g) {
  move_center(i);
  Core& a = cores_[i];
  Core& b = cores_[i + 1];
  const auto dl = a[0].rows(), dr = b[0].cols();
  MatrixXd theta[4];
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) theta[2 * s + t] = a[s] * b[t];
  MatrixXd big = MatrixXd::Zero(2 * dl, 2 * dr);
  for (int r = 0; r < 4; ++r) {
    auto blk = big.block((r >> 1) * dl, (r & 1) * dr, dl, dr);
    for (int c = 0; c < 4; ++c)
      if (g[4 * r + c] != 0.0) blk += g[4 * r + c] * theta[c];
  }
  const ThinSvd d = svd(big);
  const int k = keep_count(d.s);
  const MatrixXd u = d.u.leftCols(k);
  const MatrixXd sv = d.s.head(k).asDiagonal() * d.vt.topRows(k);
  a[0] = u.topRows(dl);
  a[1] = u.bottomRows(dl);
  b[0] = sv.leftCols(dr);
  b[1] = sv.rightCols(dr);
  center_ = i + 1;
}

void TensorTrainChain::swap_adjacent(int i) { apply_adjacent(i, kSwap); }

void TensorTrainChain::apply_bond(Bond bond, const TransitionMatrix4& m) {
  const int L = size();
  const auto [a, b] = bond;
  if (a < 0 || b < 0 || a >= L || b >= L || a == b)
    throw DiagnosticsError(ErrorCode::BondOutOfRange, "bond out of range", time_step_);
  const int lo = std::min(a, b), hi = std::max(a, b);
  const auto& g = m.data();
  const auto gate = a < b ? g : reversed(g);
  if (hi == lo + 1) {
    apply_adjacent(lo, gate);
    return;
  }
  // bring site hi next to lo, act, and move it back
  for (int k = hi - 1; k > lo; --k) swap_adjacent(k);
  apply_adjacent(lo, gate);
  for (int k = lo + 1; k < hi; ++k) swap_adjacent(k);
}

void TensorTrainChain::apply_layer(std::span<const Bond> bonds, const TransitionMatrix4& m) {
  for (const Bond& b : bonds) apply_bond(b, m);
}

void TensorTrainChain::add_products(std::span<const ProductTerm> terms) {
  if (terms.empty()) return;
  const int L = size();
  const int n = int(terms.size());
  if (L == 1) {
    for (const auto& t : terms)
      for (int s = 0; s < 2; ++s) cores_[0][s](0, 0) += t.coeff * t.factors[0][s];
    return;
  }
  std::vector<Core> out(L);
  for (int i = 0; i < L; ++i) {
    const auto dl = cores_[i][0].rows(), dr = cores_[i][0].cols();
    const auto nl = i == 0 ? 1 : dl + n;
    const auto nr = i == L - 1 ? 1 : dr + n;
    for (int s = 0; s < 2; ++s) {
      MatrixXd m = MatrixXd::Zero(nl, nr);
      m.topLeftCorner(dl, dr) = cores_[i][s];
      for (int k = 0; k < n; ++k) {
        const double f = terms[k].factors[i][s] * (i == 0 ? terms[k].coeff : 1.0);
        const auto r = i == 0 ? 0 : dl + k;
        const auto c = i == L - 1 ? 0 : dr + k;
        m(r, c) += f;
      }
      out[i][s] = std::move(m);
    }
  }
  cores_ = std::move(out);
  compress();
}

void TensorTrainChain::compress() {
  const int L = size();
  center_ = 0;
  move_center(L - 1);
  for (int i = L - 1; i > 0; --i) {
    Core& a = cores_[i];
    const auto dl = a[0].rows(), dr = a[0].cols();
    MatrixXd m(dl, 2 * dr);
    m << a[0], a[1];
    const ThinSvd d = svd(m);
    const int k = keep_count(d.s);
    const MatrixXd vt = d.vt.topRows(k);
    const MatrixXd us = d.u.leftCols(k) * d.s.head(k).asDiagonal();
    a[0] = vt.leftCols(dr);
    a[1] = vt.rightCols(dr);
    Core& b = cores_[i - 1];
    b[0] = b[0] * us;
    b[1] = b[1] * us;
  }
  center_ = 0;
}

double TensorTrainChain::norm() const {
  const Core& c = cores_[center_];
  return std::sqrt(c[0].squaredNorm() + c[1].squaredNorm());
}

double TensorTrainChain::renormalize() {
  const double n = norm();
  if (n == 0.0 || !std::isfinite(n))
    throw DiagnosticsError(ErrorCode::SignalLost, "state vanished or overflowed", time_step_);
  cores_[center_][0] /= n;
  cores_[center_][1] /= n;
  log_norm_ += std::log(n);
  return std::log(n);
}

namespace {

SignedLog contract_product(const std::vector<TensorTrainChain::Core>& cores,
                           std::span<const LocalVector> bra) {
  Eigen::RowVectorXd env = Eigen::RowVectorXd::Ones(1);
  double log_scale = 0.0;
  for (std::size_t i = 0; i < cores.size(); ++i) {
    env = bra[i][0] * (env * cores[i][0]) + bra[i][1] * (env * cores[i][1]);
    const double m = env.cwiseAbs().maxCoeff();
    if (m == 0.0) return {};
    env /= m;
    log_scale += std::log(m);
  }
  return SignedLog::from_value(env(0)).scaled(log_scale);
}

}  // namespace

double TensorTrainChain::raw_overlap(std::span<const LocalVector> bra) const {
  return contract_product(cores_, bra).value();
}

SignedLog TensorTrainChain::overlap(std::span<const LocalVector> bra) const {
  return contract_product(cores_, bra).scaled(log_norm_);
}

double TensorTrainChain::raw_amplitude(const Configuration& z) const {
  Eigen::RowVectorXd env = Eigen::RowVectorXd::Ones(1);
  for (int i = 0; i < size(); ++i) env = env * cores_[i][z[i] & 1];
  return env(0);
}

std::vector<double> TensorTrainChain::to_dense() const {
  if (size() > 24) throw Error(ErrorCode::Unsupported, "to_dense limited to L <= 24");
  MatrixXd rows = MatrixXd::Ones(1, 1);
  for (const Core& c : cores_) {
    MatrixXd next(rows.rows() * 2, c[0].cols());
    for (Eigen::Index k = 0; k < rows.rows(); ++k) {
      next.row(2 * k) = rows.row(k) * c[0];
      next.row(2 * k + 1) = rows.row(k) * c[1];
    }
    rows = std::move(next);
  }
  return {rows.data(), rows.data() + rows.rows()};
}

int TensorTrainChain::max_bond_dimension() const {
  int d = 1;
  for (const Core& c : cores_) d = std::max<int>(d, int(c[0].cols()));
  return d;
}

std::vector<int> TensorTrainChain::bond_dimensions() const {
  std::vector<int> d;
  for (int i = 0; i + 1 < size(); ++i) d.push_back(int(cores_[i][0].cols()));
  return d;
}

static_assert(std::endian::native == std::endian::little, "checkpoint layout assumes little-endian");

namespace {

constexpr char kMagic[8] = {'O', 'T', 'O', 'C', 'T', 'T', '0', '1'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw Error(ErrorCode::Io, "truncated checkpoint");
  return v;
}

}  // namespace

void TensorTrainChain::save(std::ostream& out) const {
  out.write(kMagic, sizeof kMagic);
  put<std::uint64_t>(out, cores_.size());
  put<double>(out, log_norm_);
  put<double>(out, trunc_err_);
  put<std::int64_t>(out, policy_.chi);
  put<double>(out, policy_.cutoff);
  put<double>(out, policy_.ceiling);
  put<std::uint64_t>(out, std::uint64_t(center_));
  for (const Core& c : cores_) {
    put<std::uint64_t>(out, std::uint64_t(c[0].rows()));
    put<std::uint64_t>(out, std::uint64_t(c[0].cols()));
    for (int s = 0; s < 2; ++s)
      out.write(reinterpret_cast<const char*>(c[s].data()),
                std::streamsize(sizeof(double) * c[s].size()));
  }
  if (!out) throw Error(ErrorCode::Io, "checkpoint write failed");
}

TensorTrainChain TensorTrainChain::load(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || !std::equal(magic, magic + 8, kMagic))
    throw Error(ErrorCode::Io, "not a tensor-train checkpoint");
  TensorTrainChain c;
  const auto L = get<std::uint64_t>(in);
  c.log_norm_ = get<double>(in);
  c.trunc_err_ = get<double>(in);
  c.policy_.chi = int(get<std::int64_t>(in));
  c.policy_.cutoff = get<double>(in);
  c.policy_.ceiling = get<double>(in);
  c.center_ = int(get<std::uint64_t>(in));
  if (L == 0 || L > 4096 || c.center_ >= int(L)) throw Error(ErrorCode::Io, "corrupt checkpoint header");
  for (std::uint64_t i = 0; i < L; ++i) {
    const auto rows = get<std::uint64_t>(in);
    const auto cols = get<std::uint64_t>(in);
    if (rows == 0 || cols == 0 || rows > (1u << 16) || cols > (1u << 16))
      throw Error(ErrorCode::Io, "corrupt checkpoint core shape");
    Core core;
    for (int s = 0; s < 2; ++s) {
      core[s].resize(Eigen::Index(rows), Eigen::Index(cols));
      in.read(reinterpret_cast<char*>(core[s].data()),
              std::streamsize(sizeof(double) * core[s].size()));
      if (!in) throw Error(ErrorCode::Io, "truncated checkpoint");
    }
    c.cores_.push_back(std::move(core));
  }
  return c;
}

SiteProfile site_profile(const TensorTrainChain& bra, const TensorTrainChain& ket, LocalVector diag) {
  const int L = ket.size();
  if (bra.size() != L) throw Error(ErrorCode::InvalidParameter, "bra/ket length mismatch");
  const auto& bc = bra.cores();
  const auto& kc = ket.cores();
  std::vector<MatrixXd> left(L + 1), right(L + 1);
  std::vector<double> lscale(L + 1, 0.0), rscale(L + 1, 0.0);
  left[0] = MatrixXd::Ones(1, 1);
  for (int x = 0; x < L; ++x) {
    MatrixXd e = bc[x][0].transpose() * left[x] * kc[x][0] + bc[x][1].transpose() * left[x] * kc[x][1];
    const double m = e.cwiseAbs().maxCoeff();
    if (m > 0.0) e /= m;
    lscale[x + 1] = lscale[x] + (m > 0.0 ? std::log(m) : 0.0);
    left[x + 1] = std::move(e);
  }
  right[L] = MatrixXd::Ones(1, 1);
  for (int x = L - 1; x >= 0; --x) {
    MatrixXd e = bc[x][0] * right[x + 1] * kc[x][0].transpose() + bc[x][1] * right[x + 1] * kc[x][1].transpose();
    const double m = e.cwiseAbs().maxCoeff();
    if (m > 0.0) e /= m;
    rscale[x] = rscale[x + 1] + (m > 0.0 ? std::log(m) : 0.0);
    right[x] = std::move(e);
  }
  SiteProfile out;
  out.ratios.resize(L);
  for (int x = 0; x < L; ++x) {
    double part[2];
    for (int s = 0; s < 2; ++s)
      part[s] = (bc[x][s].transpose() * left[x] * kc[x][s]).cwiseProduct(right[x + 1]).sum();
    const double den = part[0] + part[1];
    out.ratios[x] = den == 0.0 ? 0.0 : (diag[0] * part[0] + diag[1] * part[1]) / den;
    if (x == 0)
      out.inner = SignedLog::from_value(den).scaled(lscale[0] + rscale[1] + bra.log_norm() + ket.log_norm());
  }
  return out;
}

SiteProfile site_profile(const DenseChain& bra, const DenseChain& ket, LocalVector diag) {
  const int L = ket.size();
  const auto& b = bra.weights();
  const auto& k = ket.weights();
  double den = 0.0;
  std::vector<double> num(L, 0.0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double f = b[i] * k[i];
    if (f == 0.0) continue;
    den += f;
    for (int x = 0; x < L; ++x) num[x] += diag[ket.bit(i, x)] * f;
  }
  SiteProfile out;
  out.inner = SignedLog::from_value(den).scaled(bra.log_norm() + ket.log_norm());
  out.ratios.resize(L);
  for (int x = 0; x < L; ++x) out.ratios[x] = den == 0.0 ? 0.0 : num[x] / den;
  return out;
}

}  // namespace otoc
