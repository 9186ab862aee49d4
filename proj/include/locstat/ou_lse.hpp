#pragma once

#include <span>

#include "locstat/grid.hpp"
#include "locstat/kernels.hpp"
#include "locstat/optimize.hpp"
#include "locstat/simulate.hpp"

namespace locstat {

struct LseEstimate {
  double a_hat = 0.0;
  double sigma_u_hat = 0.0;  // plug-in asymptotic variance Sigma(a_hat)
  double ratio = 0.0;        // r = sum w y_{i+1} y_i / sum w y_i^2
  double lo = 0.0, hi = 0.0;
  bool clamped = false;      // r outside (e^{-Delta hi}, e^{-Delta lo}); a_hat is a box edge
};

/// Default search interval for the OU rate.
inline constexpr double kLseLo = 1e-3;
inline constexpr double kLseHi = 10.0;

/// sum_i w_i (y_{i+1} - e^{-Delta theta} y_i)^2 over consecutive pairs, i = 0..n-2.
double lse_contrast(std::span<const double> y, std::span<const double> weights, double theta,
                    double Delta);

/// Contrast for a window: consecutive pairs under O1, (Y(tau_i + Delta/N), Y(tau_i)) under O2.
double lse_contrast(const Window& window, std::span<const double> weights, double theta);

/// Closed-form minimizer of the contrast over [lo, hi]. Throws EstimationError when
/// sum w_i y_i^2 = 0 and ConfigError unless 0 < lo < hi.
LseEstimate lse_estimate(const Window& window, KernelKind kind, double lo = kLseLo,
                         double hi = kLseHi);

/// Same minimization carried out numerically by differential evolution on lse_contrast.
LseEstimate lse_estimate_numeric(const Window& window, KernelKind kind, double lo, double hi,
                                 const DeConfig& config);

/// Sigma(u) for the rate a. `delta` is N * delta_N (the O1 sampling step); for O2 only
/// a and Delta enter. Throws DomainError for nonpositive inputs.
double lse_asymp_variance(double a, double Delta, double delta, Scheme scheme);

/// sqrt(b_N / delta_N) (a_hat - a_true) / sqrt(Sigma(a_hat)).
double lse_standardized_error(const LseEstimate& estimate, double a_true, const SamplingGrid& grid);

}  // namespace locstat
