#include <cmath>

#include <gtest/gtest.h>

#include "locstat/errors.hpp"
#include "locstat/ou_lse.hpp"
#include "locstat/rng.hpp"
#include "locstat/simulate.hpp"

using namespace locstat;

namespace {

// Sum over the covariance series I(u, k) of the score, divided by V(u)^2.
double series_oracle(double a, double Delta, double delta, int terms = 10000) {
  const double c = Delta * Delta * std::exp(-2.0 * a * Delta) / (a * a);
  auto I = [&](int k) {
    const double kd = k * delta;
    return c * (std::exp(-2.0 * a * kd) - std::exp(-a * (kd + Delta + std::abs(kd - Delta))));
  };
  double s = 0.5 * I(0);
  for (int k = 1; k <= terms; ++k) s += I(k);
  const double V = Delta * Delta * std::exp(-2.0 * a * Delta) / a;
  return s / (V * V);
}

// Sandwich variance from Gaussian fourth moments (Isserlis) of the stationary OU process
// with covariance e^{-a|t|} / (2a).
double isserlis_oracle(double a, double Delta, double delta, int terms = 20000) {
  auto g = [a](double t) { return std::exp(-a * std::abs(t)) / (2.0 * a); };
  const double phi = std::exp(-a * Delta);
  auto cov = [&](double t) {
    const double ee = g(t) * (1 + phi * phi) - phi * g(t + Delta) - phi * g(t - Delta);
    const double ey = g(Delta - t) - phi * g(t);
    const double ye = g(t + Delta) - phi * g(t);
    return ee * g(t) + ey * ye;
  };
  double lrv = cov(0.0);
  for (int k = 1; k < terms; ++k) lrv += 2.0 * cov(k * delta);
  return lrv / (2.0 * g(0) * g(0) * phi * phi * Delta * Delta);
}

Window window_of(std::vector<double> values, double delta = 1.0 / 64) {
  Window w;
  const int m = static_cast<int>(values.size() / 2);
  w.grid.N = static_cast<int>(std::lround(1.0 / delta));
  w.grid.delta = delta;
  w.grid.bandwidth = m * delta;
  w.grid.u = 100.0;
  w.grid.Delta = 1.0;
  w.values = std::move(values);
  return w;
}

}  // namespace

TEST(LseContrast, ZeroWindow) {
  const std::vector<double> y(9, 0.0), w(9, 0.1);
  for (double th : {0.1, 1.0, 5.0}) EXPECT_EQ(lse_contrast(y, w, th, 1.0), 0.0);
}

TEST(LseContrast, HandValue) {
  const std::vector<double> y{1.0, 2.0}, w{0.5, 0.5};
  EXPECT_DOUBLE_EQ(lse_contrast(y, w, 0.0, 1.0), 0.5);
}

TEST(LseContrast, GeometricWindowExactFit) {
  const double c = 0.7;
  std::vector<double> y(21);
  for (int i = 0; i < 21; ++i) y[i] = 3.0 * std::exp(-c * i);
  const std::vector<double> w(21, 0.05);
  EXPECT_NEAR(lse_contrast(y, w, c, 1.0), 0.0, 1e-28);
  EXPECT_GT(lse_contrast(y, w, c + 0.1, 1.0), 0.0);
  EXPECT_GT(lse_contrast(y, w, c - 0.1, 1.0), 0.0);
}

TEST(LseEstimate, GeometricWindowRecoversRate) {
  for (double c : {0.05, 0.6, 2.0}) {
    std::vector<double> y(129);
    for (int i = 0; i < 129; ++i) y[i] = std::exp(-c * (i - 64));
    const LseEstimate est = lse_estimate(window_of(y, 1.0 / 8), KernelKind::Rectangular);
    EXPECT_NEAR(est.a_hat, c, 1e-12);
    EXPECT_FALSE(est.clamped);
  }
}

TEST(LseEstimate, DegenerateWindow) {
  EXPECT_THROW(lse_estimate(window_of(std::vector<double>(129, 0.0)), KernelKind::Rectangular),
               EstimationError);
}

TEST(LseEstimate, NegativeRateClampsToLowerEdge) {
  std::vector<double> y(129);
  for (int i = 0; i < 129; ++i) y[i] = std::exp(0.01 * i);
  const LseEstimate est = lse_estimate(window_of(y), KernelKind::Rectangular, 0.01, 5.0);
  EXPECT_TRUE(est.clamped);
  EXPECT_EQ(est.a_hat, 0.01);
  EXPECT_GE(est.ratio, 1.0);
}

TEST(LseEstimate, SteepRateClampsToUpperEdge) {
  std::vector<double> y(129);
  for (int i = 0; i < 129; ++i) y[i] = (i % 2 ? 1.0 : 1e-6);
  const LseEstimate est = lse_estimate(window_of(y), KernelKind::Rectangular, 0.01, 5.0);
  EXPECT_TRUE(est.clamped);
  EXPECT_EQ(est.a_hat, 5.0);
}

TEST(LseEstimate, ScaleEquivariant) {
  RngStream rng(61);
  std::vector<double> y(257);
  for (double& v : y) v = rng.normal();
  for (int i = 1; i < 257; ++i) y[i] += 0.6 * y[i - 1];
  const double base = lse_estimate(window_of(y), KernelKind::Epanechnikov).a_hat;
  for (double c : {-3.0, 0.001, 250.0}) {
    std::vector<double> z = y;
    for (double& v : z) v *= c;
    EXPECT_NEAR(lse_estimate(window_of(z), KernelKind::Epanechnikov).a_hat, base, 1e-12);
  }
}

TEST(LseEstimate, ClosedFormMatchesDifferentialEvolution) {
  RngStream rng(67);
  DeConfig cfg;
  cfg.tol = 0.0;
  cfg.max_gens = 400;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> y(257);
    y[0] = rng.normal();
    const double phi = 0.3 + 0.1 * trial;
    for (int i = 1; i < 257; ++i) y[i] = phi * y[i - 1] + rng.normal();
    for (auto kind : {KernelKind::Rectangular, KernelKind::Epanechnikov}) {
      const Window w = window_of(y);
      const LseEstimate closed = lse_estimate(w, kind);
      const LseEstimate numeric = lse_estimate_numeric(w, kind, kLseLo, kLseHi, cfg);
      ASSERT_FALSE(closed.clamped);
      EXPECT_NEAR(closed.a_hat, numeric.a_hat, 1e-6);
    }
  }
}

TEST(LseAsympVariance, DeltaEqualsSamplingStep) {
  EXPECT_NEAR(lse_asymp_variance(0.5, 1.0, 1.0, Scheme::O1), (std::exp(1.0) - 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(lse_asymp_variance(0.5, 1.0, 1.0, Scheme::O1), 0.859141, 5e-7);
}

TEST(LseAsympVariance, BranchesCoincideWhenDeltaEqualsDelta) {
  for (double a : {0.05, 0.3, 1.0, 2.7})
    for (double Delta : {0.2, 1.0, 3.0})
      EXPECT_NEAR(lse_asymp_variance(a, Delta, Delta, Scheme::O1),
                  lse_asymp_variance(a, Delta, Delta, Scheme::O2),
                  1e-12 * lse_asymp_variance(a, Delta, Delta, Scheme::O2));
}

TEST(LseAsympVariance, SeriesOracle) {
  EXPECT_NEAR(lse_asymp_variance(0.5, 1.0, 0.5, Scheme::O1), series_oracle(0.5, 1.0, 0.5), 1e-10);
  for (double a : {0.2, 0.5, 1.5})
    for (double ratio : {1.0, 0.5, 0.25, 1.0 / 3.0, 0.1}) {
      const double v = lse_asymp_variance(a, 1.0, ratio, Scheme::O1);
      EXPECT_NEAR(v, series_oracle(a, 1.0, ratio), 1e-8 * v) << a << " " << ratio;
    }
}

TEST(LseAsympVariance, IsserlisOracle) {
  for (double a : {0.2, 0.5, 1.5})
    for (double Delta : {0.5, 1.0, 2.0})
      for (double ratio : {1.0, 0.5, 0.25}) {
        const double delta = ratio * Delta;
        const double v = lse_asymp_variance(a, Delta, delta, Scheme::O1);
        EXPECT_NEAR(v, isserlis_oracle(a, Delta, delta), 1e-9 * v) << a << " " << Delta << " " << ratio;
      }
}

TEST(LseAsympVariance, O2MonotoneInRate) {
  for (double a = 0.05; a < 3.0; a += 0.05)
    for (double Delta = 0.1; Delta < 3.0; Delta += 0.1)
      EXPECT_GT(lse_asymp_variance(a + 0.05, Delta, 1.0, Scheme::O2),
                lse_asymp_variance(a, Delta, 1.0, Scheme::O2));
}

TEST(LseAsympVariance, O2SmallLagLimit) {
  // (e^{2 a Delta} - 1) / (2 Delta^2) = a / Delta + a^2 + O(Delta).
  for (double a : {0.3, 1.0, 2.0}) {
    const double Delta = 1e-6;
    EXPECT_NEAR(Delta * lse_asymp_variance(a, Delta, 1.0, Scheme::O2), a, 1e-5);
  }
}

TEST(LseAsympVariance, DomainErrors) {
  EXPECT_THROW(lse_asymp_variance(0.0, 1.0, 1.0, Scheme::O1), DomainError);
  EXPECT_THROW(lse_asymp_variance(0.5, -1.0, 1.0, Scheme::O1), DomainError);
  EXPECT_THROW(lse_asymp_variance(0.5, 1.0, 0.0, Scheme::O2), DomainError);
}

TEST(LseStandardizedError, Formula) {
  LseEstimate est;
  est.a_hat = 0.8;
  est.sigma_u_hat = lse_asymp_variance(0.8, 1.0, 1.0, Scheme::O1);
  SamplingGrid g = SamplingGrid::standard_o1(64, 100.0);
  EXPECT_EQ(lse_standardized_error(est, 0.8, g), 0.0);
  const double base = lse_standardized_error(est, 0.7, g);
  g.bandwidth *= 2.0;
  EXPECT_NEAR(lse_standardized_error(est, 0.7, g) / base, std::sqrt(2.0), 1e-14);
}

TEST(LseMonteCarlo, MeanWithinStandardError) {
  // a = 0.5 constant, Gaussian noise, N = 64, 100 replications.
  const double a = 0.5;
  const SamplingGrid grid = SamplingGrid::standard_o1(64, 100.0);
  double sum = 0.0;
  const int reps = 100;
  for (int r = 0; r < reps; ++r) {
    SimulationConfig c;
    c.N = 64;
    c.horizon = 150.0;
    c.sim_ratio = 200;
    c.seed = 71;
    c.stream = r;
    const Path p = simulate_tv_ou(CoefficientCurve::constant(a), default_gaussian_noise(), c);
    sum += lse_estimate(extract_window(p, grid), KernelKind::Rectangular).a_hat;
  }
  const double sigma = lse_asymp_variance(a, 1.0, 1.0, Scheme::O1);
  EXPECT_NEAR(sum / reps, a, 3.0 * std::sqrt(sigma * grid.delta / (grid.bandwidth * reps)));
}

TEST(LseO2, ShiftedPairsUsed) {
  // Exact decay Y(t) = e^{-c N (t - u)}: the pairs (Y(tau + Delta/N), Y(tau)) recover c.
  Path p;
  p.N = 16;
  p.fine_step = 1.0 / 64;
  p.step = p.fine_step;
  const double c = 0.9;
  for (int k = 0; k <= 64 * 400; ++k) p.values.push_back(std::exp(-c * 16 * (k * p.step - 200.0)));
  const SamplingGrid g = SamplingGrid::standard_o2(16, 200.0, 1.0, 40.0);
  const Window w = extract_window(p, g);
  ASSERT_EQ(w.shifted.size(), w.values.size());
  EXPECT_NEAR(lse_estimate(w, KernelKind::Rectangular).a_hat, c, 1e-9);
}
