#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "otoc/geometry.hpp"
#include "otoc/relaxation.hpp"

namespace otoc {

using cplx = std::complex<double>;
// row-major 4x4 on the pair index 2*bit_first + bit_second
using Gate4 = std::array<cplx, 16>;

enum class Pauli { X, Y, Z };
enum class PhiMode { Clean, Homogeneous, Site };

std::string_view to_string(PhiMode m);
PhiMode parse_phi_mode(std::string_view s);

struct FloquetParams {
  double az = 0.5;
  PhiMode mode = PhiMode::Clean;
  double phi = 0.6;
  std::uint64_t seed = 1;
  int n_samples = 1;
  int L = 18;
  Boundary boundary = Boundary::Open;
  int T = 30;  // Floquet periods (two brickwork layers each)
  int n_typicality = 1;
  int x_v = 0;
  int x_w = 1;
  Pauli v_op = Pauli::Z;
  Pauli w_op = Pauli::Z;

  void validate() const;
};

Gate4 floquet_gate(double az, double phi_first, double phi_second);
inline Gate4 floquet_gate(double az, double phi) { return floquet_gate(az, phi, phi); }

// SplitMix64 finalizer: independent seed per (seed, stream)
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

class PureState {
 public:
  static constexpr int kMaxSites = 24;

  explicit PureState(int L);
  static PureState basis(int L, std::size_t index);
  static PureState haar_random(int L, std::mt19937_64& rng);

  int size() const { return L_; }
  std::size_t dim() const { return amp_.size(); }
  void apply_gate(int a, int b, const Gate4& g);
  void apply_pauli(int site, Pauli p);
  double norm() const;
  cplx vdot(const PureState& other) const;  // <this|other>
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }

 private:
  int L_;
  std::vector<cplx> amp_;
};

// One Floquet period: even-bond layer then odd-bond layer.
class FloquetCircuit {
 public:
  FloquetCircuit(int L, Boundary b, double az, const std::vector<double>& phis);
  void forward(PureState& s) const;
  void backward(PureState& s) const;
  int size() const { return L_; }

 private:
  int L_;
  std::vector<std::pair<int, int>> bonds_;  // in forward order
  std::vector<Gate4> gates_;
  std::vector<Gate4> adjoints_;
};

struct FloquetResult {
  std::vector<cplx> otoc;  // index t = 0..T
  double saturation = 0.0;
  RelaxationSeries series;  // log |Re OTOC - saturation|
  int n_samples = 0;
  std::vector<std::uint64_t> seeds;
  double max_norm_drift = 0.0;
};

double haar_saturation(int L);
FloquetResult otoc_typicality(const FloquetParams& p);
FloquetResult disorder_average(const FloquetParams& p);
// full trace through dense operator evolution, L <= 10
std::vector<cplx> otoc_exact_trace(const FloquetParams& p);

struct FloquetFit {
  double rate = 0.0;   // per period, units of ln 2
  Window window{};
  double noise = 0.0;  // typicality floor 1/sqrt(N 2^L)
  int n = 0;
};

// first-stage fit over (lo, t_end], t_end the last time before the signal
// falls under noise_factor times the typicality floor
FloquetFit floquet_first_stage(const FloquetResult& r, int L, int n_states, double lo,
                               double noise_factor = 3.0);

// per-sample phases as drawn by disorder_average
std::vector<double> sample_phases(const FloquetParams& p, std::mt19937_64& rng);

}  // namespace otoc
