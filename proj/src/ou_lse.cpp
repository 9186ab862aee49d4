#include "locstat/ou_lse.hpp"

#include <cmath>

#include "locstat/errors.hpp"

namespace locstat {
namespace {

void check_box(double lo, double hi) {
  if (!(lo > 0.0 && lo < hi) || !std::isfinite(hi))
    throw ConfigError("LSE search interval must satisfy 0 < lo < hi < inf");
}

// Sums (sum w x y, sum w y^2) over the contrast pairs (x_i, y_i), x the later value.
std::pair<double, double> pair_sums(const Window& window, std::span<const double> w) {
  const std::size_t n = window.values.size();
  if (w.size() != n) throw ConfigError("weights and window have different lengths");
  double num = 0.0, den = 0.0;
  if (window.grid.scheme == Scheme::O2) {
    if (window.shifted.size() != n) throw ConfigError("O2 window lacks the shifted observations");
    for (std::size_t i = 0; i < n; ++i) {
      num += w[i] * window.shifted[i] * window.values[i];
      den += w[i] * window.values[i] * window.values[i];
    }
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      num += w[i] * window.values[i + 1] * window.values[i];
      den += w[i] * window.values[i] * window.values[i];
    }
  }
  return {num, den};
}

}  // namespace

double lse_contrast(std::span<const double> y, std::span<const double> weights, double theta,
                    double Delta) {
  const double rho = std::exp(-Delta * theta);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    const double e = y[i + 1] - rho * y[i];
    s += weights[i] * e * e;
  }
  return s;
}

double lse_contrast(const Window& window, std::span<const double> weights, double theta) {
  if (window.grid.scheme == Scheme::O1)
    return lse_contrast(window.values, weights, theta, window.grid.Delta);
  const double rho = std::exp(-window.grid.Delta * theta);
  double s = 0.0;
  for (std::size_t i = 0; i < window.values.size(); ++i) {
    const double e = window.shifted[i] - rho * window.values[i];
    s += weights[i] * e * e;
  }
  return s;
}

LseEstimate lse_estimate(const Window& window, KernelKind kind, double lo, double hi) {
  check_box(lo, hi);
  const std::vector<double> w = kernel_weights(kind, window.grid);
  const auto [num, den] = pair_sums(window, w);
  if (!(den > 0.0)) throw EstimationError("lse_estimate: degenerate window (sum w y^2 = 0)");
  const double Delta = window.grid.Delta;
  LseEstimate est;
  est.lo = lo;
  est.hi = hi;
  est.ratio = num / den;
  if (est.ratio >= std::exp(-Delta * lo)) {
    est.a_hat = lo;
    est.clamped = true;
  } else if (est.ratio <= std::exp(-Delta * hi)) {
    est.a_hat = hi;
    est.clamped = true;
  } else {
    est.a_hat = -std::log(est.ratio) / Delta;
  }
  est.sigma_u_hat = lse_asymp_variance(est.a_hat, Delta, window.grid.sampling_step(), window.grid.scheme);
  return est;
}

LseEstimate lse_estimate_numeric(const Window& window, KernelKind kind, double lo, double hi,
                                 const DeConfig& config) {
  check_box(lo, hi);
  const std::vector<double> w = kernel_weights(kind, window.grid);
  if (!(pair_sums(window, w).second > 0.0))
    throw EstimationError("lse_estimate_numeric: degenerate window (sum w y^2 = 0)");
  const DeResult r = de_minimize(
      [&](std::span<const double> x) { return lse_contrast(window, w, x[0]); }, Box{{lo}, {hi}},
      config);
  LseEstimate est;
  est.lo = lo;
  est.hi = hi;
  est.a_hat = r.x[0];
  est.ratio = std::exp(-window.grid.Delta * est.a_hat);
  est.clamped = est.a_hat <= lo || est.a_hat >= hi;
  est.sigma_u_hat = lse_asymp_variance(est.a_hat, window.grid.Delta, window.grid.sampling_step(),
                                       window.grid.scheme);
  return est;
}

double lse_asymp_variance(double a, double Delta, double delta, Scheme scheme) {
  if (!(a > 0.0) || !(Delta > 0.0) || !(delta > 0.0))
    throw DomainError("lse_asymp_variance: a, Delta and delta must be > 0");
  const double e2 = std::exp(2.0 * a * Delta);
  if (scheme == Scheme::O2) return (e2 - 1.0) / (2.0 * Delta * Delta);
  const double n = std::ceil(Delta / delta - 1e-9);
  const double q = std::exp(-2.0 * a * delta);
  // 1 - q^(n-1) and 1 - q via expm1 to keep precision for small a * delta.
  const double geometric = -std::expm1(-2.0 * a * delta * (n - 1.0)) / -std::expm1(-2.0 * a * delta);
  return (e2 + 2.0 * e2 * q * geometric - 2.0 * n + 1.0) / (2.0 * Delta * Delta);
}

double lse_standardized_error(const LseEstimate& estimate, double a_true, const SamplingGrid& grid) {
  if (!(estimate.sigma_u_hat > 0.0))
    throw DomainError("lse_standardized_error: plug-in variance must be > 0");
  return std::sqrt(grid.bandwidth / grid.delta) * (estimate.a_hat - a_true) /
         std::sqrt(estimate.sigma_u_hat);
}

}  // namespace locstat
