#include <cmath>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "locstat/linalg.hpp"
#include "locstat/rng.hpp"

using namespace locstat;

TEST(MatrixExp, Zero) {
  EXPECT_LE((matrix_exp(Eigen::MatrixXd::Zero(3, 3)) - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-15);
}

TEST(MatrixExp, Diagonal) {
  Eigen::MatrixXd M(2, 2);
  M << -0.5, 0.0, 0.0, -3.0;
  const Eigen::MatrixXd E = matrix_exp(M, 1.0);
  EXPECT_NEAR(E(0, 0), std::exp(-0.5), 1e-14 * std::exp(-0.5));
  EXPECT_NEAR(E(1, 1), std::exp(-3.0), 1e-14 * std::exp(-3.0));
  EXPECT_EQ(E(0, 1), 0.0);
  EXPECT_EQ(E(1, 0), 0.0);
}

TEST(MatrixExp, Nilpotent) {
  Eigen::MatrixXd M(2, 2);
  M << 0.0, 1.0, 0.0, 0.0;
  const Eigen::MatrixXd E = matrix_exp(M, 1.0);
  EXPECT_NEAR(E(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(E(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(E(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(E(1, 1), 1.0, 1e-15);
}

TEST(MatrixExp, AgreesWithEigenOnRandomMatrices) {
  RngStream rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = 2.0 * rng.normal();
    const double t = 0.1 + 2.0 * rng.uniform();
    const Eigen::MatrixXd mine = matrix_exp(M, t);
    const Eigen::MatrixXd ref = (M * t).exp();
    EXPECT_LE((mine - ref).norm(), 1e-12 * ref.norm()) << "trial " << trial;
  }
}

TEST(MatrixExp, GroupProperty) {
  Eigen::MatrixXd M(3, 3);
  M << -1.0, 2.0, 0.5, -0.3, -2.0, 1.0, 0.0, 0.4, -0.7;
  const Eigen::MatrixXd a = matrix_exp(M, 0.7) * matrix_exp(M, 1.3);
  EXPECT_LE((a - matrix_exp(M, 2.0)).norm(), 1e-13 * a.norm());
}

TEST(Linalg, SpectralRadiusAndRank) {
  Eigen::MatrixXd M(2, 2);
  M << 0.0, -2.0, 2.0, 0.0;
  EXPECT_NEAR(spectral_radius(M), 2.0, 1e-14);
  Eigen::MatrixXd R(2, 2);
  R << 1.0, 2.0, 2.0, 4.0;
  EXPECT_EQ(numerical_rank(R), 1);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Identity(3, 3)), 3);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(2, 2)), 0);
}
