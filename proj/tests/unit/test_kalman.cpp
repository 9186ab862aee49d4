#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "locstat/kalman.hpp"
#include "locstat/rng.hpp"

using namespace locstat;

namespace {

const std::vector<double> kTheta{-0.5, -3.0, 0.2};

std::vector<double> random_theta(RngStream& rng, const Box& box) {
  std::vector<double> th(box.dim());
  for (std::size_t k = 0; k < box.dim(); ++k)
    th[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * rng.uniform();
  return th;
}

// Explicit truncated sum: eps_i = y_{i+1} - B' sum_{n=1}^{i+1} Pc^{n-1} K y_{i+1-n}.
std::vector<double> innovations_by_sum(const std::vector<double>& y, const SampledModel& sm,
                                       const KalmanSteady& ks) {
  std::vector<double> eps(y.size() - 1);
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    Eigen::VectorXd power_k = ks.K;
    double pred = 0.0;
    for (std::size_t n = 1; n <= i + 1; ++n) {
      pred += sm.B.dot(power_k) * y[i + 1 - n];
      power_k = ks.Phi_closed * power_k;
    }
    eps[i] = y[i + 1] - pred;
  }
  return eps;
}

}  // namespace

TEST(Riccati, ScalarReduction) {
  for (double phi : {0.1, 0.5, 0.95})
    for (double q : {0.01, 1.0, 7.0}) {
      const Eigen::MatrixXd Phi = Eigen::MatrixXd::Constant(1, 1, phi);
      const Eigen::MatrixXd Q = Eigen::MatrixXd::Constant(1, 1, q);
      const KalmanSteady ks = solve_riccati(Phi, Q, Eigen::VectorXd::Ones(1));
      EXPECT_NEAR(ks.Omega(0, 0), q, 1e-12 * q);
      EXPECT_NEAR(ks.K(0), phi, 1e-12);
      EXPECT_NEAR(ks.V, q, 1e-12 * q);
      EXPECT_NEAR(ks.Phi_closed(0, 0), 0.0, 1e-12);
    }
}

TEST(Riccati, ZeroNoiseIsDegenerate) {
  const StateSpaceMatrices m = example_family(kTheta);
  const SampledModel sm = sample_model(m, 1.0);
  try {
    solve_riccati(sm.Phi, Eigen::MatrixXd::Zero(2, 2), sm.B);
    FAIL() << "expected DegeneracyError";
  } catch (const DegeneracyError& e) {
    EXPECT_EQ(e.steady().Omega.norm(), 0.0);
    EXPECT_EQ(e.steady().V, 0.0);
  }
}

TEST(Riccati, ExampleFamilyInvariants) {
  RngStream rng(41);
  const ExampleFamily fam;
  for (int k = 0; k < 20; ++k) {
    const auto th = k == 0 ? kTheta : random_theta(rng, fam.default_box());
    const SampledModel sm = sample_model(fam.matrices(th), 1.0);
    const KalmanSteady ks = solve_riccati(sm);
    EXPECT_LE(ks.residual, 1e-10 * (1.0 + ks.Omega.norm()));
    EXPECT_LE(riccati_residual(sm.Phi, sm.Qn, sm.B, ks.Omega), 1e-10);
    EXPECT_GT(ks.V, 0.0);
    EXPECT_LT(spectral_radius(ks.Phi_closed), 1.0);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ks.Omega).eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(Riccati, InnovationVarianceMatchesSpectralFactorization) {
  // Kolmogorov-Szego: log V = (1/2pi) int log(2 pi f) over [-pi, pi].
  const SampledModel sm = sample_model(example_family(kTheta), 1.0);
  const KalmanSteady ks = solve_riccati(sm);
  const int n = 1 << 14;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = -std::numbers::pi + 2.0 * std::numbers::pi * (k + 0.5) / n;
    s += std::log(2.0 * std::numbers::pi * spectral_density_sampled(sm, w));
  }
  EXPECT_NEAR(std::log(ks.V), s / n, 1e-9);
}

TEST(Riccati, SlowSystemUsesNewtonPhase) {
  // Closed-loop spectral radius close to one: plain iteration is slow, the Newton phase finishes.
  const Eigen::MatrixXd Phi = Eigen::MatrixXd::Constant(1, 1, 0.9999);
  const Eigen::MatrixXd Q = Eigen::MatrixXd::Constant(1, 1, 1e-6);
  Eigen::MatrixXd Phi2(2, 2), Q2(2, 2);
  Phi2 << 0.999, 0.0, 0.0, 0.998;
  Q2 << 1.0, 0.999, 0.999, 1.0;
  Eigen::VectorXd B2(2);
  B2 << 1.0, -1.0;
  const KalmanSteady a = solve_riccati(Phi, Q, Eigen::VectorXd::Ones(1));
  EXPECT_LE(a.residual, 1e-12);
  const KalmanSteady b = solve_riccati(Phi2, Q2, B2);
  EXPECT_LE(b.residual, 1e-10 * (1.0 + b.Omega.norm()));
  EXPECT_LT(spectral_radius(b.Phi_closed), 1.0);
}

TEST(Innovations, ZeroWindow) {
  const SampledModel sm = sample_model(example_family(kTheta), 1.0);
  const KalmanSteady ks = solve_riccati(sm);
  const std::vector<double> y(11, 0.0);
  for (double e : truncated_innovations(y, sm, ks)) EXPECT_EQ(e, 0.0);
  EXPECT_EQ(truncated_innovations(y, sm, ks).size(), 10u);
}

TEST(Innovations, ScalarAr1RecoversNoise) {
  const double phi = 0.6, q = 0.5;
  SampledModel sm;
  sm.Phi = Eigen::MatrixXd::Constant(1, 1, phi);
  sm.Qn = Eigen::MatrixXd::Constant(1, 1, q);
  sm.B = Eigen::VectorXd::Ones(1);
  const KalmanSteady ks = solve_riccati(sm);
  RngStream rng(43);
  std::vector<double> y(200), z(200);
  y[0] = rng.normal();
  for (int n = 1; n < 200; ++n) {
    z[n] = std::sqrt(q) * rng.normal();
    y[n] = phi * y[n - 1] + z[n];
  }
  const auto eps = truncated_innovations(y, sm, ks);
  for (int n = 1; n < 200; ++n) EXPECT_NEAR(eps[n - 1], z[n], 1e-12);
}

TEST(Innovations, RecursionEqualsTruncatedSum) {
  RngStream rng(47);
  const ExampleFamily fam;
  for (int trial = 0; trial < 10; ++trial) {
    const auto th = random_theta(rng, fam.default_box());
    const SampledModel sm = sample_model(fam.matrices(th), 1.0);
    const KalmanSteady ks = solve_riccati(sm);
    std::vector<double> y(50);
    for (double& v : y) v = rng.normal();
    const auto a = truncated_innovations(y, sm, ks);
    const auto b = innovations_by_sum(y, sm, ks);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(QmleObjective, ZeroWeightsAndZeroWindow) {
  const ExampleFamily fam;
  const std::vector<double> y(21, 0.0), zero_w(21, 0.0), w(21, 0.05);
  EXPECT_EQ(qmle_objective(y, zero_w, fam, kTheta, 1.0), 0.0);
  const KalmanSteady ks = solve_riccati(sample_model(fam.matrices(kTheta), 1.0));
  const double expected = 20 * 0.05 * (std::log(2.0 * std::numbers::pi) + std::log(ks.V));
  EXPECT_NEAR(qmle_objective(y, w, fam, kTheta, 1.0), expected, 1e-12);
}

TEST(QmleObjective, ZeroWindowMinimizedAtSmallestNoise) {
  // With eps == 0 the objective is increasing in V, i.e. in theta_3.
  const ExampleFamily fam;
  const std::vector<double> y(21, 0.0), w(21, 0.05);
  double previous = -INFINITY;
  for (double t3 : {0.05, 0.1, 0.5, 1.0}) {
    const double v = qmle_objective(y, w, fam, std::vector<double>{-0.5, -3.0, t3}, 1.0);
    EXPECT_GT(v, previous);
    previous = v;
  }
}

TEST(QmleObjective, InadmissibleThetaIsInfinite) {
  const ExampleFamily fam;
  const std::vector<double> y(21, 1.0), w(21, 0.05);
  EXPECT_EQ(qmle_objective(y, w, fam, std::vector<double>{-1.0, -3.0, 0.2}, 1.0), INFINITY);
  EXPECT_EQ(qmle_objective(y, w, fam, std::vector<double>{-0.5, -0.5, 0.2}, 1.0), INFINITY);
  EXPECT_EQ(qmle_objective(y, w, fam, std::vector<double>{0.5, -3.0, 0.2}, 1.0), INFINITY);
}

TEST(QmleObjective, RelabelingSymmetry) {
  RngStream rng(53);
  const ExampleFamily fam;
  std::vector<double> y(101), w(101, 0.01);
  for (double& v : y) v = rng.normal();
  for (int trial = 0; trial < 10; ++trial) {
    const auto th = random_theta(rng, fam.default_box());
    const std::vector<double> swapped{th[1], th[0], th[2]};
    EXPECT_NEAR(qmle_objective(y, w, fam, th, 1.0), qmle_objective(y, w, fam, swapped, 1.0), 1e-10);
  }
}

TEST(QmleObjective, PopulationMinimumAtTruth) {
  // Exact AR(1) data from a CAR(1) with rate 0.8 and Sigma = 0.5; grid over the rate.
  const Car1Family car1;
  const double a0 = 0.8, s0 = 0.5;
  const double phi = std::exp(-a0), q = s0 * (1.0 - std::exp(-2.0 * a0)) / (2.0 * a0);
  RngStream rng(59);
  const int n = 100000;
  std::vector<double> y(n), w(n, 1.0 / n);
  y[0] = std::sqrt(q / (1.0 - phi * phi)) * rng.normal();
  for (int k = 1; k < n; ++k) y[k] = phi * y[k - 1] + std::sqrt(q) * rng.normal();
  double best = INFINITY, best_a = 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double a = 0.5 + 0.01 * k;
    const double v = qmle_objective(y, w, car1, std::vector<double>{a, s0}, 1.0);
    if (v < best) {
      best = v;
      best_a = a;
    }
  }
  EXPECT_NEAR(best_a, a0, 0.02);
}

TEST(QmleEstimate, ZeroWindowIsEstimationError) {
  Window w;
  w.grid = SamplingGrid::standard_o1(64, 100.0);
  w.values.assign(w.grid.size(), 0.0);
  const ExampleFamily fam;
  EXPECT_THROW(qmle_estimate(w, KernelKind::Rectangular, fam, fam.default_box(), DeConfig{}),
               EstimationError);
}
