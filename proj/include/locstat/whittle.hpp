#pragma once

#include <complex>
#include <span>
#include <vector>

#include "locstat/kalman.hpp"
#include "locstat/kernels.hpp"
#include "locstat/optimize.hpp"
#include "locstat/simulate.hpp"
#include "locstat/statespace.hpp"

namespace locstat {

/// Localized periodogram on the Whittle grid omega_j = pi j / (2m + 1), j = -2m..2m+1,
/// together with the localized autocovariances.
struct LocalSpectrum {
  int m = 0;
  std::vector<double> frequencies;  // index j + 2m
  std::vector<double> periodogram;  // I(omega_j), index j + 2m
  std::vector<double> autocov;      // Gamma(h), h = 0..2m
  // cos/sin(k omega_j) for j = 0..2m+1, k = 0..kMaxStateDim; row j has kMaxStateDim + 1 entries.
  std::vector<double> cos_k, sin_k;

  std::size_t size() const { return frequencies.size(); }  // 4m + 2
};

/// Gamma(h) = (delta/b) sum_j sqrt(K_j K_{j+h}) y_j y_{j+h}; 0 for h > 2m.
/// Throws KernelError if a kernel weight is negative.
double local_autocov(const Window& window, KernelKind kind, int h);
/// Gamma(0..2m).
std::vector<double> local_autocovs(const Window& window, KernelKind kind);

/// Weighted-DFT form (1/2pi)(delta/b) |sum_j sqrt(K_j) y_j e^{-i j omega}|^2.
double local_periodogram(const Window& window, KernelKind kind, double omega);
/// Autocovariance form (1/2pi) sum_{|h| <= 2m} Gamma(h) e^{-i h omega}.
double local_periodogram_from_autocov(std::span<const double> autocov, double omega);

/// Periodogram on the full Whittle grid (DFT form with an exact twiddle table).
LocalSpectrum local_spectrum(const Window& window, KernelKind kind);

/// (1/(4m+2)) sum_{j=-2m}^{2m+1} e^{-i h omega_j}; equals 1 when (4m+2) | h and 0 otherwise.
std::complex<double> fourier_indicator_sum(int m, long long h);

/// W(theta) = (1/(4m+2)) sum_j (I(omega_j) / f(omega_j, theta) + log f(omega_j, theta)).
/// Throws NumericError when f <= 0 at a grid frequency.
double whittle_objective(const LocalSpectrum& spectrum, const ModelFamily& family,
                         std::span<const double> theta, double Delta);
/// Convenience form; throws ConfigError unless the grid is O1 with N delta_N = Delta.
double whittle_objective(const Window& window, KernelKind kind, const ModelFamily& family,
                         std::span<const double> theta);

/// argmin of the Whittle objective over the box. `objective` holds W at the estimate.
/// Throws ConfigError for O2 grids and EstimationError as qmle_estimate.
StateSpaceEstimate whittle_estimate(const Window& window, KernelKind kind, const ModelFamily& family,
                                    const Box& box, const DeConfig& config);

}  // namespace locstat
