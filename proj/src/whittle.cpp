#include "locstat/whittle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace locstat {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// z_j = sqrt(w_j) y_j, so that Gamma(h) = sum_j z_j z_{j+h}.
std::vector<double> tapered(const Window& window, KernelKind kind) {
  const std::vector<double> w = kernel_weights(kind, window.grid);
  if (w.size() != window.values.size())
    throw ConfigError("window length does not match its grid");
  std::vector<double> z(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) throw KernelError("localized periodogram requires a nonnegative kernel");
    z[i] = std::sqrt(w[i]) * window.values[i];
  }
  return z;
}

void require_o1(const SamplingGrid& grid) {
  grid.validate();
  if (grid.scheme != Scheme::O1 ||
      std::abs(grid.sampling_step() - grid.Delta) > 1e-12 * grid.Delta)
    throw ConfigError("Whittle estimation is only defined for O1 grids with N delta_N = Delta");
}

}  // namespace

double local_autocov(const Window& window, KernelKind kind, int h) {
  if (h < 0) h = -h;
  const std::vector<double> z = tapered(window, kind);
  double s = 0.0;
  for (std::size_t j = 0; j + h < z.size(); ++j) s += z[j] * z[j + h];
  return s;
}

std::vector<double> local_autocovs(const Window& window, KernelKind kind) {
  const std::vector<double> z = tapered(window, kind);
  const std::size_t n = z.size();
  std::vector<double> g(n, 0.0);
  for (std::size_t h = 0; h < n; ++h) {
    double s = 0.0;
    for (std::size_t j = 0; j + h < n; ++j) s += z[j] * z[j + h];
    g[h] = s;
  }
  return g;
}

double local_periodogram(const Window& window, KernelKind kind, double omega) {
  const std::vector<double> z = tapered(window, kind);
  const int m = window.m();
  double re = 0.0, im = 0.0;
  for (int j = -m; j <= m; ++j) {
    re += z[j + m] * std::cos(j * omega);
    im -= z[j + m] * std::sin(j * omega);
  }
  return (re * re + im * im) / kTwoPi;
}

double local_periodogram_from_autocov(std::span<const double> autocov, double omega) {
  double s = autocov.empty() ? 0.0 : autocov[0];
  for (std::size_t h = 1; h < autocov.size(); ++h) s += 2.0 * autocov[h] * std::cos(h * omega);
  return s / kTwoPi;
}

LocalSpectrum local_spectrum(const Window& window, KernelKind kind) {
  const std::vector<double> z = tapered(window, kind);
  const int m = window.m();
  const int n = 4 * m + 2;
  LocalSpectrum out;
  out.m = m;
  out.frequencies.resize(n);
  out.periodogram.resize(n);
  for (int j = -2 * m; j <= 2 * m + 1; ++j) out.frequencies[j + 2 * m] = kTwoPi * j / n;
  std::vector<double> cos_table(n), sin_table(n);
  for (int k = 0; k < n; ++k) {
    cos_table[k] = std::cos(kTwoPi * k / n);
    sin_table[k] = std::sin(kTwoPi * k / n);
  }
  // |sum_k z_k e^{i k omega_j}| does not depend on the index origin; I is even in j.
  for (int j = 0; j <= 2 * m + 1; ++j) {
    double re = 0.0, im = 0.0;
    long long phase = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      re += z[k] * cos_table[phase];
      im += z[k] * sin_table[phase];
      phase += j;
      if (phase >= n) phase -= n;
    }
    const double I = (re * re + im * im) / kTwoPi;
    out.periodogram[j + 2 * m] = I;
    if (j >= 1 && j <= 2 * m) out.periodogram[-j + 2 * m] = I;
  }
  constexpr int kRow = kMaxStateDim + 1;
  out.cos_k.resize((2 * m + 2) * kRow);
  out.sin_k.resize((2 * m + 2) * kRow);
  for (int j = 0; j <= 2 * m + 1; ++j)
    for (int k = 0; k < kRow; ++k) {
      const int r = static_cast<int>((static_cast<long long>(j) * k) % n);
      out.cos_k[j * kRow + k] = cos_table[r];
      out.sin_k[j * kRow + k] = sin_table[r];
    }
  out.autocov.resize(z.size());
  for (std::size_t h = 0; h < z.size(); ++h) {
    double s = 0.0;
    for (std::size_t j = 0; j + h < z.size(); ++j) s += z[j] * z[j + h];
    out.autocov[h] = s;
  }
  return out;
}

std::complex<double> fourier_indicator_sum(int m, long long h) {
  const long long n = 4LL * m + 2;
  double re = 0.0, im = 0.0;
  for (long long j = -2LL * m; j <= 2LL * m + 1; ++j) {
    long long r = (h % n) * (j % n) % n;  // exact phase reduction
    if (r < 0) r += n;
    const double angle = kTwoPi * static_cast<double>(r) / static_cast<double>(n);
    re += std::cos(angle);
    im -= std::sin(angle);
  }
  return {re / static_cast<double>(n), im / static_cast<double>(n)};
}

double whittle_objective(const LocalSpectrum& spectrum, const ModelFamily& family,
                         std::span<const double> theta, double Delta) {
  const SampledSpectrum f(sample_model(family.matrices(theta), Delta));
  const int m = spectrum.m;
  const int n = 4 * m + 2;
  const int p = f.dim();
  constexpr int kRow = kMaxStateDim + 1;
  const bool tabulated = spectrum.cos_k.size() == static_cast<std::size_t>((2 * m + 2) * kRow);
  double c[kRow], s[kRow];
  auto term = [&](int j) {
    const double* cj = c;
    const double* sj = s;
    if (tabulated) {
      cj = &spectrum.cos_k[j * kRow];
      sj = &spectrum.sin_k[j * kRow];
    } else {
      const double omega = spectrum.frequencies[j + 2 * m];
      for (int k = 0; k <= p; ++k) {
        c[k] = std::cos(k * omega);
        s[k] = std::sin(k * omega);
      }
    }
    const double fj = f.evaluate({cj, static_cast<std::size_t>(p + 1)},
                                 {sj, static_cast<std::size_t>(p + 1)});
    if (!(fj > 0.0)) throw NumericError("whittle_objective: nonpositive spectral density");
    return spectrum.periodogram[j + 2 * m] / fj + std::log(fj);
  };
  // f and I are even in j: j = 0 and j = 2m+1 appear once, 1..2m twice.
  double total = term(0) + term(2 * m + 1);
  for (int j = 1; j <= 2 * m; ++j) total += 2.0 * term(j);
  return total / n;
}

double whittle_objective(const Window& window, KernelKind kind, const ModelFamily& family,
                         std::span<const double> theta) {
  require_o1(window.grid);
  return whittle_objective(local_spectrum(window, kind), family, theta, window.grid.Delta);
}

StateSpaceEstimate whittle_estimate(const Window& window, KernelKind kind, const ModelFamily& family,
                                    const Box& box, const DeConfig& config) {
  require_o1(window.grid);
  if (box.dim() != static_cast<std::size_t>(family.param_dim()))
    throw ConfigError("whittle_estimate: box dimension does not match the family");
  bool all_zero = true;
  for (double v : window.values) all_zero = all_zero && v == 0.0;
  if (all_zero) throw EstimationError("whittle_estimate: degenerate window (all observations zero)");
  const LocalSpectrum spectrum = local_spectrum(window, kind);
  const double Delta = window.grid.Delta;
  auto objective = [&](std::span<const double> th) {
    try {
      if (!check_assumptions_at(family, th, Delta).all_passed()) return kInf;
      const double v = whittle_objective(spectrum, family, th, Delta);
      return std::isfinite(v) ? v : kInf;
    } catch (const Error&) {
      return kInf;
    }
  };
  DeResult r;
  try {
    r = de_minimize(objective, box, config);
  } catch (const OptimizationError& e) {
    throw EstimationError(std::string("whittle_estimate: ") + e.what());
  }
  if (!std::isfinite(r.value)) throw EstimationError("whittle_estimate: no feasible candidate");
  StateSpaceEstimate est;
  est.theta = r.x;
  est.objective = r.value;
  est.generations = r.generations;
  est.evaluations = r.evaluations;
  est.infeasible_evaluations = r.infinite_evaluations;
  est.converged = r.converged;
  est.assumptions = check_assumptions_at(family, est.theta, Delta);
  est.riccati_residual = solve_riccati(sample_model(family.matrices(est.theta), Delta)).residual;
  return est;
}

}  // namespace locstat
