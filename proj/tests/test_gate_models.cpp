#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "otoc/errors.hpp"
#include "otoc/gate_models.hpp"

using namespace otoc;

namespace {

constexpr int MM = 0, MP = 1, PM = 2, PP = 3;

}

TEST(HaarTransition, QTwoWeights) {
  const auto m = haar_transition(2);
  EXPECT_DOUBLE_EQ(m(MM, MP), 0.4);
  EXPECT_DOUBLE_EQ(m(PP, MP), 0.4);
  EXPECT_DOUBLE_EQ(m(MP, MP), 0.0);
  EXPECT_DOUBLE_EQ(m(PM, MP), 0.0);
  for (int r = 0; r < 4; ++r) EXPECT_DOUBLE_EQ(m(r, PP), r == PP ? 1.0 : 0.0);
}

TEST(HaarTransition, QThree) { EXPECT_DOUBLE_EQ(haar_transition(3)(MM, PM), 0.3); }

TEST(HaarTransition, RejectsSmallQ) {
  try {
    haar_transition(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
  }
}

TEST(ParamTransition, HalfAz) {
  const auto m = param_transition({1, 1, 0.5, 2});
  EXPECT_NEAR(m(MM, MP), 2.0 / 9, 1e-15);
  EXPECT_NEAR(m(MP, MP), -1.0 / 9, 1e-15);
  EXPECT_NEAR(m(PM, MP), 5.0 / 9, 1e-15);
  EXPECT_NEAR(m(PP, MP), 2.0 / 9, 1e-15);
  // mirrored column
  EXPECT_NEAR(m(PM, PM), -1.0 / 9, 1e-15);
  EXPECT_NEAR(m(MP, PM), 5.0 / 9, 1e-15);
}

TEST(ParamTransition, SwapAtAzOne) {
  const auto m = param_transition({1, 1, 1, 2});
  EXPECT_NEAR(m(MM, MP), 0.0, 1e-15);
  EXPECT_NEAR(m(MP, MP), 0.0, 1e-15);
  EXPECT_NEAR(m(PM, MP), 1.0, 1e-15);
}

TEST(ParamTransition, AzZero) {
  const auto m = param_transition({1, 1, 0, 2});
  EXPECT_NEAR(m(MM, MP), 4.0 / 9, 1e-15);
  EXPECT_NEAR(m(MP, MP), -2.0 / 9, 1e-15);
  EXPECT_NEAR(m(PM, MP), 1.0 / 9, 1e-15);
}

TEST(ParamTransition, RejectsOtherQ) {
  try {
    param_transition({1, 1, 0.5, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedEnsemble);
  }
}

TEST(ParamTransition, FixedPointColumnsForGeneralParameters) {
  for (double ax : {0.1, 0.6, 1.0})
    for (double az : {0.0, 0.3, 0.9}) {
      const auto m = param_transition({ax, 0.4, az, 2});
      for (int r = 0; r < 4; ++r) {
        EXPECT_EQ(m(r, MM), r == MM ? 1.0 : 0.0);
        EXPECT_EQ(m(r, PP), r == PP ? 1.0 : 0.0);
      }
    }
}

TEST(ModifiedTransition, MinusCountReweighting) {
  const GateParams p{1, 1, 0.5, 2};
  const auto m = param_transition(p);
  const auto mod = modified_transition(p);
  // D M D^-1 with D = q^{n_minus}
  EXPECT_NEAR(mod(MM, MP), 2 * m(MM, MP), 1e-15);
  EXPECT_NEAR(mod(PP, MP), m(PP, MP) / 2, 1e-15);
  EXPECT_NEAR(mod(MM, MP), 4.0 / 9, 1e-15);
  EXPECT_NEAR(mod(PP, PM), 1.0 / 9, 1e-15);
  EXPECT_NEAR(mod(MP, MP), m(MP, MP), 1e-15);
  for (int r = 0; r < 4; ++r) EXPECT_EQ(mod(r, MM), r == MM ? 1.0 : 0.0);
}

TEST(ModifiedTransition, AzOneUnchanged) {
  const GateParams p{1, 1, 1, 2};
  const auto m = param_transition(p);
  const auto mod = modified_transition(p);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(mod(r, c), m(r, c), 1e-15);
}

TEST(ClusterTransfer, HalfAz) {
  const auto t = cluster_transfer(0.5);
  EXPECT_NEAR(t(2, 1), 2.0 / 3, 1e-15);
  EXPECT_NEAR(t(1, 2), 2.0 / 3, 1e-15);
  EXPECT_NEAR(t(3, 3), 7.0 / 9, 1e-15);
  EXPECT_EQ(t.flavor(), Flavor::Cluster);
}

TEST(ClusterTransfer, ColumnsSumToOne) {
  for (double az = 0.0; az <= 1.0; az += 0.05)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(cluster_transfer(az).column_sum(c), 1.0, 4e-16);
}

TEST(ClusterTransfer, DeterministicSwapAtAzOne) {
  const auto t = cluster_transfer(1.0);
  EXPECT_NEAR(t(2, 1), 1.0, 1e-15);
  EXPECT_NEAR(t(3, 1), 0.0, 1e-15);
}

TEST(Rates, Values) {
  EXPECT_NEAR(rates({1, 1, 0.5, 2}).r_mag, std::log(1.5) / std::numbers::ln2, 1e-15);
  EXPECT_NEAR(rates({1, 1, 0.5, 2}).r_mag, 0.5849625, 1e-7);
  EXPECT_NEAR(rates({1, 1, 1.0, 2}).r_mag, 0.0, 1e-15);
  const double c = std::cos(0.2 * std::numbers::pi);
  EXPECT_NEAR(rates({1, 1, 0.2, 2}).r_mag, std::log2(3.0 / (2.0 - c)), 1e-14);
  EXPECT_NEAR(rates({1, 1, 0.2, 2}).r_mag, 1.33281, 1e-5);
  EXPECT_EQ(rates({1, 1, 0.2, 2}).r_dw, 1.0);
}

TEST(Rates, RejectsNonDualUnitary) {
  try {
    rates({0.5, 1, 0.2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
}

TEST(PredictedRates, TableCells) {
  const auto a = predicted_rates(Geometry::Brickwork, Boundary::Open, 0.2);
  EXPECT_NEAR(a.r1, 0.6664, 1e-4);
  EXPECT_EQ(a.r2, 1.0);
  const auto b = predicted_rates(Geometry::Staircase, Boundary::Periodic, 0.5);
  EXPECT_NEAR(b.r1, 0.29248, 1e-5);
  EXPECT_NEAR(b.r2, 0.29248, 1e-5);
  const auto c = predicted_rates(Geometry::Brickwork, Boundary::Periodic, 0.5);
  EXPECT_NEAR(c.r2, 0.58496, 1e-5);
  const auto d = predicted_rates(Geometry::Staircase, Boundary::Open, 0.7);
  EXPECT_NEAR(d.r2, magnon_rate(0.7), 1e-15);
}

TEST(BasisBridge, SpinToClusterReproducesTransfer) {
  const auto b = spin_to_cluster(2);
  Eigen::Matrix2d b2;
  b2 << b[0], b[1], b[2], b[3];
  Eigen::Matrix4d bb;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) bb(2 * i + j, 2 * k + l) = b2(i, k) * b2(j, l);
  for (double az : {0.0, 0.2, 0.5, 0.77, 1.0}) {
    const auto m = param_transition({1, 1, az, 2});
    const auto t = cluster_transfer(az);
    Eigen::Matrix4d me, te;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        me(r, c) = m(r, c);
        te(r, c) = t(r, c);
      }
    const Eigen::Matrix4d got = bb * me * bb.inverse();
    EXPECT_LE((got - te).cwiseAbs().maxCoeff(), 1e-12) << "az=" << az;
  }
}
