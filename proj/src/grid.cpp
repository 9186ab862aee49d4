#include "locstat/grid.hpp"

#include <cmath>

#include "locstat/errors.hpp"

namespace locstat {

Scheme parse_scheme(std::string_view text) {
  if (text == "O1" || text == "o1") return Scheme::O1;
  if (text == "O2" || text == "o2") return Scheme::O2;
  throw ConfigError("unknown sampling scheme '" + std::string(text) + "' (expected O1 or O2)");
}

std::string to_string(Scheme scheme) { return scheme == Scheme::O1 ? "O1" : "O2"; }

SamplingGrid SamplingGrid::standard_o1(int N, double u, double bandwidth_constant) {
  SamplingGrid g;
  g.N = N;
  g.delta = 1.0 / N;
  g.bandwidth = bandwidth_constant / std::sqrt(static_cast<double>(N));
  g.u = u;
  g.Delta = 1.0;
  g.scheme = Scheme::O1;
  return g;
}

SamplingGrid SamplingGrid::standard_o2(int N, double u, double Delta, double bandwidth_constant) {
  SamplingGrid g;
  g.N = N;
  g.delta = 1.0 / std::sqrt(static_cast<double>(N));
  g.bandwidth = bandwidth_constant / std::pow(static_cast<double>(N), 0.25);
  g.u = u;
  g.Delta = Delta;
  g.scheme = Scheme::O2;
  return g;
}

int SamplingGrid::m() const {
  // Guard against b/delta landing a few ulps below an integer.
  const double ratio = bandwidth / delta;
  return static_cast<int>(std::floor(ratio * (1.0 + 1e-12)));
}

void SamplingGrid::validate() const {
  if (N < 1) throw ConfigError("grid: N must be a positive integer");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("grid: delta_N must be > 0");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw ConfigError("grid: bandwidth b_N must be > 0");
  if (!(u > 0.0) || !std::isfinite(u)) throw ConfigError("grid: estimation point u must be > 0");
  if (!(Delta > 0.0) || !std::isfinite(Delta)) throw ConfigError("grid: Delta must be > 0");
  if (m() < 1) throw ConfigError("grid: m_N = floor(b_N/delta_N) must be >= 1");
  if (scheme == Scheme::O1 && std::abs(N * delta - Delta) > 1e-12 * Delta)
    throw ConfigError("grid: scheme O1 requires N * delta_N == Delta");
}

}  // namespace locstat
