#pragma once

#include <string>
#include <string_view>

namespace locstat {

/// Observation scheme. O1: N * delta_N is a fixed delta > 0. O2: N * delta_N grows with N.
enum class Scheme { O1, O2 };

Scheme parse_scheme(std::string_view text);
std::string to_string(Scheme scheme);

/// Equidistant observation grid around a rescaled time point u.
///
/// Observations are taken at tau_i = u + i * delta for i = -m..m with
/// m = floor(bandwidth / delta). `Delta` is the lag of the contrast functions;
/// under O1 it must equal N * delta.
struct SamplingGrid {
  int N = 1;
  double delta = 1.0;      // delta_N, spacing of observations in rescaled time
  double bandwidth = 1.0;  // b_N, half-width of the observation window
  double u = 1.0;          // estimation point
  double Delta = 1.0;      // contrast lag in the stationary time scale
  Scheme scheme = Scheme::O1;

  /// Grid with delta_N = 1/N, b_N = 400/sqrt(N), Delta = 1 (the O1 Monte Carlo setup).
  static SamplingGrid standard_o1(int N, double u, double bandwidth_constant = 400.0);

  /// O2 grid with delta_N = N^{-1/2}, b_N = bandwidth_constant * N^{-1/4}.
  static SamplingGrid standard_o2(int N, double u, double Delta = 1.0,
                                  double bandwidth_constant = 400.0);

  /// m_N = floor(b_N / delta_N).
  int m() const;
  int size() const { return 2 * m() + 1; }

  /// tau_i for i in [-m, m].
  double time(int i) const { return u + i * delta; }

  /// N * delta_N (the delta of scheme O1).
  double sampling_step() const { return N * delta; }

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;

  SamplingGrid with_u(double new_u) const {
    SamplingGrid g = *this;
    g.u = new_u;
    return g;
  }
};

}  // namespace locstat
