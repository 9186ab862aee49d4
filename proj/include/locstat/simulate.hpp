#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "locstat/curves.hpp"
#include "locstat/grid.hpp"
#include "locstat/levy.hpp"
#include "locstat/statespace.hpp"

namespace locstat {

struct SimulationConfig {
  int N = 1;
  double horizon = 2000.0;    // paths live on [0, horizon] in rescaled time
  int sim_ratio = 1000;       // Euler steps per observation spacing
  double obs_spacing = 0.0;   // 0 selects 1/N (scheme O1)
  int record_every = 0;       // store every k-th Euler node; 0 selects sim_ratio
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;   // Monte Carlo replication index
  bool keep_states = false;   // state-space only: also store X at recorded nodes

  double spacing() const { return obs_spacing > 0.0 ? obs_spacing : 1.0 / N; }
  double fine_step() const { return spacing() / sim_ratio; }
  int record_stride() const { return record_every > 0 ? record_every : sim_ratio; }
  void validate() const;
};

/// Path recorded on the uniform lattice t_k = k * step, k = 0..size()-1.
struct Path {
  int N = 1;
  double fine_step = 0.0;
  double step = 0.0;  // record_stride * fine_step
  std::vector<double> values;
  int state_dim = 0;
  std::vector<double> states;  // row-major, state_dim entries per recorded node (optional)

  std::size_t size() const { return values.size(); }
  double time(std::size_t k) const { return static_cast<double>(k) * step; }
  double horizon() const { return values.empty() ? 0.0 : time(values.size() - 1); }
  /// Index of the recorded node at time t; throws RangeError when t is outside the
  /// path or more than 1e-6 step away from a node.
  std::size_t index_of(double t) const;
};

/// Euler scheme for dY(t) = -N a(t) Y(t) dt + dL(N t), Y(0) = 0:
///   y <- y - N a(t) y h + (L(N (t+h)) - L(N t)).
/// Throws ConfigError when a is not positive on [0, horizon] or N a h >= 1.
Path simulate_tv_ou(const CoefficientCurve& a, const LevySpec& noise, const SimulationConfig& config);

/// Euler scheme for dX = N A(t) X dt + C(t) dL(N t), Y = B(t)' X, X(0) = 0, with
/// (A, B, C, Sigma)(t) = family(theta(t)). Increments are scaled by sqrt(Sigma(t) / Sigma_L)
/// so the driver variance equals the family's Sigma. Throws ConfigError naming the time point
/// when A(t) has an eigenvalue with nonnegative real part or the Euler step is unstable.
Path simulate_tv_statespace(const ModelFamily& family, const ParameterCurve& theta,
                            const LevySpec& noise, const SimulationConfig& config);

/// Observations Y(tau_i), i = -m..m, stored at index i + m.
struct Window {
  SamplingGrid grid;
  std::vector<double> values;
  std::vector<double> left_history;  // Y(tau_{-m-k}), k = 1..n, nearest first
  std::vector<double> shifted;       // Y(tau_i + Delta/N); filled for O2 grids only

  int m() const { return grid.m(); }
  double at(int i) const { return values[i + m()]; }
};

/// Reads the window for `grid` off the recorded lattice (no interpolation). For O2 grids
/// the values at tau_i + Delta/N are taken at the nearest recorded node. Throws RangeError
/// when the window (plus `history` earlier observations) exceeds the path.
Window extract_window(const Path& path, const SamplingGrid& grid, int history = 0);

/// CSV with header t,value[,x1..xp]; %.17g so that reading back is exact.
void write_path_csv(const Path& path, std::ostream& out);

}  // namespace locstat
