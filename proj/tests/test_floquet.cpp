#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "otoc/errors.hpp"
#include "otoc/floquet.hpp"
#include "otoc/gate_models.hpp"

using namespace otoc;
using Eigen::Matrix4cd;

namespace {

Matrix4cd to_eigen(const Gate4& g) {
  Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = g[4 * r + c];
  return m;
}

// exp(-i pi/4 (XX + YY + az ZZ)) (u x u) built by diagonalizing the exponent
Matrix4cd reference_gate(double az, double phi) {
  Eigen::Matrix2cd X, Y, Z, I;
  X << 0, 1, 1, 0;
  Y << 0, cplx(0, -1), cplx(0, 1), 0;
  Z << 1, 0, 0, -1;
  I.setIdentity();
  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Matrix4cd k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
  };
  const Matrix4cd H = kron(X, X) + kron(Y, Y) + az * kron(Z, Z);
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(H);
  Eigen::Vector4cd ph;
  for (int i = 0; i < 4; ++i) ph(i) = std::exp(cplx(0, -std::numbers::pi / 4 * es.eigenvalues()(i)));
  const Matrix4cd w2 = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::Matrix2cd u = std::cos(1.0) * I + cplx(0, std::sin(1.0)) * (std::sin(phi) * X + std::cos(phi) * Z);
  return w2 * kron(u, u);
}

FloquetParams small(int L, int T) {
  FloquetParams p;
  p.L = L;
  p.T = T;
  return p;
}

}  // namespace

TEST(FloquetGate, Unitary) {
  for (double az : {0.0, 0.3, 0.5, 1.0})
    for (double phi : {0.0, 0.6, 2.1}) {
      const Matrix4cd g = to_eigen(floquet_gate(az, phi));
      EXPECT_LE((g.adjoint() * g - Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(FloquetGate, MatchesExponentialKernel) {
  for (double az : {0.1, 0.5, 0.9})
    for (double phi : {0.0, 0.6, 4.0})
      EXPECT_LE((to_eigen(floquet_gate(az, phi)) - reference_gate(az, phi)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FloquetGate, CommutesWithZZWhenPhiZero) {
  Matrix4cd zz = Matrix4cd::Zero();
  zz.diagonal() << 1, -1, -1, 1;
  const Matrix4cd g = to_eigen(floquet_gate(0.37, 0.0));
  EXPECT_LE((g * zz - zz * g).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FloquetGate, SwapAtDualUnitaryPoint) {
  const Matrix4cd g = to_eigen(floquet_gate(1.0, 0.0));
  EXPECT_NEAR(std::abs(g(1, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(g(2, 1)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(g(1, 2)), 1.0, 1e-12);
}

TEST(PureState, HaarStateNormalized) {
  std::mt19937_64 rng(3);
  const auto s = PureState::haar_random(10, rng);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(PureState, CircuitRoundTrip) {
  std::mt19937_64 rng(5);
  auto s = PureState::haar_random(8, rng);
  const auto s0 = s;
  const FloquetCircuit c(8, Boundary::Periodic, 0.5, std::vector<double>(8, 0.6));
  for (int i = 0; i < 5; ++i) c.forward(s);
  for (int i = 0; i < 5; ++i) c.backward(s);
  EXPECT_NEAR(std::abs(s0.vdot(s)), 1.0, 1e-12);
}

TEST(PureState, PauliActsOnBit) {
  auto s = PureState::basis(3, 0);
  s.apply_pauli(2, Pauli::X);
  EXPECT_EQ(s.amplitudes()[1], cplx(1, 0));
  s.apply_pauli(2, Pauli::Z);
  EXPECT_EQ(s.amplitudes()[1], cplx(-1, 0));
}

TEST(Typicality, OtocAtZeroIsOne) {
  auto p = small(10, 3);
  p.n_typicality = 2;
  const auto r = otoc_typicality(p);
  EXPECT_EQ(r.otoc[0].real(), 1.0);
  EXPECT_LE(std::abs(r.otoc[0].imag()), 1e-15);
  EXPECT_LE(r.max_norm_drift, 1e-10);
}

TEST(Typicality, Saturation) {
  EXPECT_DOUBLE_EQ(haar_saturation(3), -1.0 / 63);
  EXPECT_EQ(otoc_typicality(small(6, 1)).saturation, haar_saturation(6));
}

TEST(Typicality, MatchesExactTraceWithinStatisticalError) {
  auto p = small(8, 8);
  p.n_typicality = 16;
  const auto typ = otoc_typicality(p);
  const auto exact = otoc_exact_trace(p);
  const double sigma = 1.0 / std::sqrt(16.0 * 256.0);
  EXPECT_NEAR(exact[0].real(), 1.0, 1e-12);
  for (int t = 0; t <= p.T; ++t) EXPECT_NEAR(typ.otoc[t].real(), exact[t].real(), 5 * sigma) << t;
}

TEST(Typicality, Deterministic) {
  auto p = small(8, 4);
  p.mode = PhiMode::Site;
  p.n_samples = 2;
  const auto a = disorder_average(p);
  const auto b = disorder_average(p);
  EXPECT_EQ(a.otoc, b.otoc);
  EXPECT_EQ(a.seeds, b.seeds);
  EXPECT_EQ(a.seeds.size(), 2u);
}

TEST(Disorder, SingleHomogeneousSampleIsCleanCircuitWithDrawnPhase) {
  auto p = small(8, 6);
  p.mode = PhiMode::Homogeneous;
  p.n_samples = 1;
  p.n_typicality = 16;
  const auto dis = disorder_average(p);
  std::mt19937_64 rng(stream_seed(p.seed, 0));
  const auto phis = sample_phases(p, rng);
  ASSERT_EQ(phis.size(), 8u);
  for (double f : phis) EXPECT_EQ(f, phis[0]);
  auto clean = small(8, 6);
  clean.phi = phis[0];
  const auto exact = otoc_exact_trace(clean);
  const double sigma = 1.0 / std::sqrt(16.0 * 256.0);
  for (int t = 0; t <= p.T; ++t) EXPECT_NEAR(dis.otoc[t].real(), exact[t].real(), 5 * sigma);
}

TEST(Disorder, SitePhasesDiffer) {
  auto p = small(8, 1);
  p.mode = PhiMode::Site;
  std::mt19937_64 rng(1);
  const auto phis = sample_phases(p, rng);
  EXPECT_NE(phis[0], phis[1]);
  for (double f : phis) {
    EXPECT_GE(f, 0.0);
    EXPECT_LT(f, 2 * std::numbers::pi);
  }
}

TEST(StreamSeed, DistinctAndStable) {
  EXPECT_EQ(stream_seed(1, 0), stream_seed(1, 0));
  EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
}

TEST(FloquetParams, Validation) {
  auto p = small(26, 2);
  EXPECT_THROW(p.validate(), Error);
  p = small(8, 2);
  p.n_typicality = 0;
  EXPECT_THROW(p.validate(), Error);
  EXPECT_THROW(otoc_exact_trace(small(12, 2)), Error);
}

TEST(FloquetFit, FirstStageSlopeAtTwelveSites) {
  auto p = small(12, 12);
  p.n_typicality = 2;
  const auto r = otoc_typicality(p);
  const auto f = floquet_first_stage(r, p.L, p.n_typicality, 1.0);
  ASSERT_GE(f.n, 3);
  EXPECT_NEAR(f.rate, magnon_rate(0.5) / 2, 0.25 * magnon_rate(0.5) / 2);
}
