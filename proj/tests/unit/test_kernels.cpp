#include <cmath>
#include <limits>
#include <numeric>

#include <gtest/gtest.h>

#include "locstat/errors.hpp"
#include "locstat/kernels.hpp"

using namespace locstat;

namespace {

SamplingGrid grid_with(int N, double delta, double bandwidth) {
  SamplingGrid g;
  g.N = N;
  g.delta = delta;
  g.bandwidth = bandwidth;
  g.u = 10.0;
  g.Delta = N * delta;
  return g;
}

}  // namespace

TEST(Kernels, CenterValues) {
  EXPECT_EQ(kernel_eval(KernelKind::Rectangular, 0.0), 0.5);
  EXPECT_EQ(kernel_eval(KernelKind::Epanechnikov, 0.0), 0.75);
}

TEST(Kernels, VanishOutsideSupport) {
  EXPECT_EQ(kernel_eval(KernelKind::Epanechnikov, 1.0), 0.0);
  EXPECT_EQ(kernel_eval(KernelKind::Rectangular, 2.0), 0.0);
  EXPECT_EQ(kernel_eval(KernelKind::Rectangular, 1.0), 0.5);
  for (double x : {1.0000001, 3.0, -7.5, 1e300}) {
    EXPECT_EQ(kernel_eval(KernelKind::Rectangular, x), 0.0);
    EXPECT_EQ(kernel_eval(KernelKind::Epanechnikov, x), 0.0);
  }
}

TEST(Kernels, EvenAndNonnegative) {
  for (int k = -300; k <= 300; ++k) {
    const double x = k / 137.0;
    for (auto kind : {KernelKind::Rectangular, KernelKind::Epanechnikov}) {
      EXPECT_EQ(kernel_eval(kind, x), kernel_eval(kind, -x));
      EXPECT_GE(kernel_eval(kind, x), 0.0);
    }
  }
}

TEST(Kernels, IntegrateToOne) {
  // Simpson is exact for the quadratic Epanechnikov kernel and the constant rectangular one.
  for (auto kind : {KernelKind::Rectangular, KernelKind::Epanechnikov}) {
    const int n = 20000;
    const double h = 2.0 / n;
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double c = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      s += c * kernel_eval(kind, -1.0 + k * h);
    }
    EXPECT_NEAR(s * h / 3.0, 1.0, 1e-10);
  }
}

TEST(Kernels, NonFiniteArgumentIsDomainError) {
  EXPECT_THROW(kernel_eval(KernelKind::Rectangular, std::nan("")), DomainError);
  EXPECT_THROW(kernel_eval(KernelKind::Epanechnikov, std::numeric_limits<double>::infinity()),
               DomainError);
}

TEST(Kernels, ParseNames) {
  EXPECT_EQ(parse_kernel("rect"), KernelKind::Rectangular);
  EXPECT_EQ(parse_kernel("epanechnikov"), KernelKind::Epanechnikov);
  EXPECT_THROW(parse_kernel("gauss"), ConfigError);
}

TEST(KernelWeights, RectangularHundred) {
  const auto w = kernel_weights(KernelKind::Rectangular, grid_with(100, 0.01, 1.0));
  ASSERT_EQ(w.size(), 201u);
  for (double v : w) EXPECT_NEAR(v, 0.005, 1e-15);
  EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.005, 1e-12);
}

TEST(KernelWeights, RectangularSmallest) {
  const auto w = kernel_weights(KernelKind::Rectangular, grid_with(1, 1.0, 1.0));
  ASSERT_EQ(w.size(), 3u);
  for (double v : w) EXPECT_EQ(v, 0.5);
}

TEST(KernelWeights, EpanechnikovBoundaryVanishes) {
  const auto w = kernel_weights(KernelKind::Epanechnikov, SamplingGrid::standard_o1(16, 1000.0));
  EXPECT_NEAR(w.front(), 0.0, 1e-15);
  EXPECT_NEAR(w.back(), 0.0, 1e-15);
}

TEST(KernelWeights, RiemannSumNearOne) {
  for (int N : {1, 4, 16, 64, 256})
    for (auto kind : {KernelKind::Rectangular, KernelKind::Epanechnikov}) {
      const SamplingGrid g = SamplingGrid::standard_o1(N, 1000.0);
      const auto w = kernel_weights(kind, g);
      const double s = std::accumulate(w.begin(), w.end(), 0.0);
      const double r = g.delta / g.bandwidth;
      EXPECT_GE(s, 1.0 - 3.0 * r);
      EXPECT_LE(s, 1.0 + 3.0 * r);
      for (double v : w) EXPECT_GE(v, 0.0);
    }
}

TEST(KernelWeights, InvalidGridRejected) {
  EXPECT_THROW(kernel_weights(KernelKind::Rectangular, grid_with(1, 1.0, 0.5)), ConfigError);
}

TEST(LocalizingKernelCheck, AcceptsBuiltins) {
  for (auto kind : {KernelKind::Rectangular, KernelKind::Epanechnikov})
    EXPECT_NO_THROW(check_localizing_kernel([kind](double x) { return kernel_eval(kind, x); }));
}

TEST(LocalizingKernelCheck, RejectsBadKernels) {
  EXPECT_THROW(check_localizing_kernel([](double x) { return std::abs(x) <= 1 ? 1.0 : 0.0; }),
               KernelError);
  EXPECT_THROW(check_localizing_kernel([](double x) { return std::exp(-x * x) / std::sqrt(M_PI); }),
               KernelError);
  EXPECT_THROW(check_localizing_kernel([](double x) {
                 return std::abs(x) <= 1 ? 0.5 + (x > 0 ? 0.6 : -0.6) : 0.0;
               }),
               KernelError);
}
