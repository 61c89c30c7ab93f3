#include "otoc/floquet.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "otoc/errors.hpp"

namespace otoc {

std::string_view to_string(PhiMode m) {
  switch (m) {
    case PhiMode::Clean: return "clean";
    case PhiMode::Homogeneous: return "homog";
    case PhiMode::Site: return "site";
  }
  return "unknown";
}

PhiMode parse_phi_mode(std::string_view s) {
  if (s == "clean") return PhiMode::Clean;
  if (s == "homog") return PhiMode::Homogeneous;
  if (s == "site") return PhiMode::Site;
  throw Error(ErrorCode::InvalidParameter, "unknown phi mode '" + std::string(s) + "'");
}

void FloquetParams::validate() const {
  if (!std::isfinite(az) || !std::isfinite(phi)) throw Error(ErrorCode::InvalidParameter, "non-finite parameter");
  if (L < 2) throw Error(ErrorCode::TooSmall, "L must be >= 2");
  if (L > PureState::kMaxSites) throw Error(ErrorCode::Unsupported, "L above 24 is not supported");
  if (boundary == Boundary::Periodic && L % 2 != 0)
    throw Error(ErrorCode::InvalidGeometry, "periodic brickwork needs even L");
  if (T < 0) throw Error(ErrorCode::InvalidParameter, "T must be >= 0");
  if (n_typicality < 1) throw Error(ErrorCode::InvalidParameter, "n-typ must be >= 1");
  if (n_samples < 1) throw Error(ErrorCode::InvalidParameter, "n-samples must be >= 1");
  if (x_v < 0 || x_v >= L || x_w < 0 || x_w >= L)
    throw Error(ErrorCode::InvalidParameter, "insertion site outside the chain");
}

namespace {

using Mat2 = std::array<cplx, 4>;

Mat2 single_site(double phi) {
  // exp(i (sin phi X + cos phi Z)) = cos 1 + i sin 1 (sin phi X + cos phi Z)
  const double c = std::cos(1.0), s = std::sin(1.0);
  const cplx i(0.0, 1.0);
  return {c + i * s * std::cos(phi), i * s * std::sin(phi),
          i * s * std::sin(phi), c - i * s * std::cos(phi)};
}

Gate4 adjoint(const Gate4& g) {
  Gate4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[4 * r + c] = std::conj(g[4 * c + r]);
  return out;
}

}  // namespace

Gate4 floquet_gate(double az, double phi_first, double phi_second) {
  const double q = std::numbers::pi * az / 4.0;
  const cplx diag = std::polar(1.0, -q);
  const cplx hop = cplx(0.0, -1.0) * std::polar(1.0, q);
  const Gate4 w = {diag, 0, 0, 0,
                   0, 0, hop, 0,
                   0, hop, 0, 0,
                   0, 0, 0, diag};
  const Mat2 ua = single_site(phi_first), ub = single_site(phi_second);
  Gate4 uu{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) uu[4 * (2 * i + j) + (2 * k + l)] = ua[2 * i + k] * ub[2 * j + l];
  Gate4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) out[4 * r + c] += w[4 * r + k] * uu[4 * k + c];
  return out;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PureState::PureState(int L) : L_(L) {
  if (L < 1 || L > kMaxSites) throw Error(ErrorCode::Unsupported, "state size outside [1, 24]");
  amp_.assign(std::size_t(1) << L, cplx(0.0));
}

PureState PureState::basis(int L, std::size_t index) {
  PureState s(L);
  s.amp_.at(index) = 1.0;
  return s;
}

PureState PureState::haar_random(int L, std::mt19937_64& rng) {
  PureState s(L);
  std::normal_distribution<double> g(0.0, 1.0);
  for (auto& a : s.amp_) {
    const double re = g(rng);
    const double im = g(rng);
    a = {re, im};
  }
  const double n = s.norm();
  for (auto& a : s.amp_) a /= n;
  return s;
}

void PureState::apply_gate(int a, int b, const Gate4& g) {
  const std::size_t ma = std::size_t(1) << (L_ - 1 - a);
  const std::size_t mb = std::size_t(1) << (L_ - 1 - b);
  const std::int64_t n = std::int64_t(amp_.size());
  cplx* psi = amp_.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t kk = 0; kk < n; ++kk) {
    const std::size_t k = std::size_t(kk);
    if (k & (ma | mb)) continue;
    const std::size_t i0 = k, i1 = k | mb, i2 = k | ma, i3 = k | ma | mb;
    const cplx x0 = psi[i0], x1 = psi[i1], x2 = psi[i2], x3 = psi[i3];
    psi[i0] = g[0] * x0 + g[1] * x1 + g[2] * x2 + g[3] * x3;
    psi[i1] = g[4] * x0 + g[5] * x1 + g[6] * x2 + g[7] * x3;
    psi[i2] = g[8] * x0 + g[9] * x1 + g[10] * x2 + g[11] * x3;
    psi[i3] = g[12] * x0 + g[13] * x1 + g[14] * x2 + g[15] * x3;
  }
}

void PureState::apply_pauli(int site, Pauli p) {
  const std::size_t m = std::size_t(1) << (L_ - 1 - site);
  const cplx i(0.0, 1.0);
  for (std::size_t k = 0; k < amp_.size(); ++k) {
    if (p == Pauli::Z) {
      if (k & m) amp_[k] = -amp_[k];
      continue;
    }
    if (k & m) continue;
    const cplx lo = amp_[k], hi = amp_[k | m];
    if (p == Pauli::X) {
      amp_[k] = hi;
      amp_[k | m] = lo;
    } else {
      // Y|0> = i|1>, Y|1> = -i|0>
      amp_[k] = -i * hi;
      amp_[k | m] = i * lo;
    }
  }
}

double PureState::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

cplx PureState::vdot(const PureState& other) const {
  cplx s(0.0);
  for (std::size_t k = 0; k < amp_.size(); ++k) s += std::conj(amp_[k]) * other.amp_[k];
  return s;
}

FloquetCircuit::FloquetCircuit(int L, Boundary b, double az, const std::vector<double>& phis) : L_(L) {
  for (int parity = 0; parity < 2; ++parity) {
    for (int i = parity; i + 1 < L; i += 2) bonds_.push_back({i, i + 1});
    if (b == Boundary::Periodic && parity == 1 && L > 2) bonds_.push_back({L - 1, 0});
  }
  for (const auto& [a, c] : bonds_) {
    gates_.push_back(floquet_gate(az, phis.at(a), phis.at(c)));
    adjoints_.push_back(adjoint(gates_.back()));
  }
}

void FloquetCircuit::forward(PureState& s) const {
  for (std::size_t k = 0; k < bonds_.size(); ++k) s.apply_gate(bonds_[k].first, bonds_[k].second, gates_[k]);
}

void FloquetCircuit::backward(PureState& s) const {
  for (std::size_t k = bonds_.size(); k-- > 0;) s.apply_gate(bonds_[k].first, bonds_[k].second, adjoints_[k]);
}

double haar_saturation(int L) { return -1.0 / (std::pow(4.0, L) - 1.0); }

namespace {

// A(t)|s> with A(t) = U^-t V U^t
void apply_heisenberg(PureState& s, const FloquetCircuit& c, int t, int site, Pauli v) {
  for (int k = 0; k < t; ++k) c.forward(s);
  s.apply_pauli(site, v);
  for (int k = 0; k < t; ++k) c.backward(s);
}

void check_norm(const PureState& s, double& drift, int t) {
  const double d = std::abs(s.norm() - 1.0);
  drift = std::max(drift, d);
  if (d > 1e-8) throw DiagnosticsError(ErrorCode::NumericalIntegrity, "state norm drifted by " + std::to_string(d), t);
}

// accumulates sum over typicality states of <psi|A W A W|psi> into acc
void accumulate_typicality(const FloquetParams& p, const FloquetCircuit& c, std::mt19937_64& rng,
                           std::vector<cplx>& acc, double& drift) {
  for (int n = 0; n < p.n_typicality; ++n) {
    const PureState psi = PureState::haar_random(p.L, rng);
    const double nrm = psi.vdot(psi).real();
    for (int t = 0; t <= p.T; ++t) {
      PureState u = psi;
      apply_heisenberg(u, c, t, p.x_v, p.v_op);
      PureState v = psi;
      v.apply_pauli(p.x_w, p.w_op);
      apply_heisenberg(v, c, t, p.x_v, p.v_op);
      v.apply_pauli(p.x_w, p.w_op);
      check_norm(u, drift, t);
      check_norm(v, drift, t);
      acc[t] += u.vdot(v) / nrm;
    }
  }
}

void finish(FloquetResult& r, int L) {
  r.saturation = haar_saturation(L);
  for (std::size_t t = 0; t < r.otoc.size(); ++t) {
    const double d = r.otoc[t].real() - r.saturation;
    r.series.push(double(t), SignedLog::from_value(d), 0.0);
  }
}

}  // namespace

std::vector<double> sample_phases(const FloquetParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  switch (p.mode) {
    case PhiMode::Clean: return std::vector<double>(p.L, p.phi);
    case PhiMode::Homogeneous: return std::vector<double>(p.L, u(rng));
    case PhiMode::Site: {
      std::vector<double> phis(p.L);
      for (auto& x : phis) x = u(rng);
      return phis;
    }
  }
  return {};
}

FloquetResult disorder_average(const FloquetParams& p) {
  p.validate();
  FloquetResult r;
  r.otoc.assign(p.T + 1, cplx(0.0));
  const int samples = p.mode == PhiMode::Clean ? 1 : p.n_samples;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t seed = stream_seed(p.seed, std::uint64_t(s));
    r.seeds.push_back(seed);
    std::mt19937_64 rng(seed);
    const FloquetCircuit circuit(p.L, p.boundary, p.az, sample_phases(p, rng));
    accumulate_typicality(p, circuit, rng, r.otoc, r.max_norm_drift);
  }
  r.n_samples = samples;
  for (auto& x : r.otoc) x /= double(samples) * p.n_typicality;
  finish(r, p.L);
  return r;
}

FloquetResult otoc_typicality(const FloquetParams& p) {
  FloquetParams q = p;
  if (q.mode != PhiMode::Clean) q.n_samples = 1;
  return disorder_average(q);
}

FloquetFit floquet_first_stage(const FloquetResult& r, int L, int n_states, double lo, double noise_factor) {
  FloquetFit f;
  f.noise = 1.0 / std::sqrt(double(n_states) * std::pow(2.0, L));
  const double floor = std::log(noise_factor * f.noise);
  double hi = lo;
  for (const auto& p : r.series.points) {
    if (p.t <= lo) continue;
    if (p.sign == 0 || p.log_abs < floor) break;
    hi = p.t;
  }
  f.window = {lo, hi};
  const LineFit lf = fit_window(r.series, f.window);
  f.n = lf.n;
  f.rate = -lf.slope / std::numbers::ln2;
  return f;
}

std::vector<cplx> otoc_exact_trace(const FloquetParams& p) {
  p.validate();
  if (p.L > 10) throw Error(ErrorCode::Unsupported, "exact trace limited to L <= 10");
  if (p.mode != PhiMode::Clean) throw Error(ErrorCode::Unsupported, "exact trace runs the clean circuit only");
  using Mat = Eigen::MatrixXcd;
  const std::size_t d = std::size_t(1) << p.L;
  const FloquetCircuit circuit(p.L, p.boundary, p.az, std::vector<double>(p.L, p.phi));
  Mat u(d, d), v(d, d), w(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    PureState s = PureState::basis(p.L, k);
    circuit.forward(s);
    for (std::size_t j = 0; j < d; ++j) u(j, k) = s.amplitudes()[j];
    PureState a = PureState::basis(p.L, k);
    a.apply_pauli(p.x_v, p.v_op);
    PureState b = PureState::basis(p.L, k);
    b.apply_pauli(p.x_w, p.w_op);
    for (std::size_t j = 0; j < d; ++j) {
      v(j, k) = a.amplitudes()[j];
      w(j, k) = b.amplitudes()[j];
    }
  }
  std::vector<cplx> out;
  Mat vt = v;
  for (int t = 0; t <= p.T; ++t) {
    if (t > 0) vt = u.adjoint() * vt * u;
    const Mat vw = vt * w;
    out.push_back((vw * vw).trace() / double(d));
  }
  return out;
}

}  // namespace otoc
