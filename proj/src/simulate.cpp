#include "locstat/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "locstat/errors.hpp"

namespace locstat {
namespace {

std::size_t fine_steps(const SimulationConfig& c) {
  const double steps = c.horizon / c.fine_step();
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-6 * std::max(1.0, steps))
    throw ConfigError("horizon must be a multiple of the Euler step");
  return static_cast<std::size_t>(rounded);
}

std::string at_time(double t) {
  std::ostringstream os;
  os << "at t = " << t;
  return os.str();
}

}  // namespace

void SimulationConfig::validate() const {
  if (N < 1) throw ConfigError("simulation: N must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("simulation: horizon must be > 0");
  if (sim_ratio < 1) throw ConfigError("simulation: sim_ratio must be >= 1");
  if (obs_spacing < 0.0) throw ConfigError("simulation: obs_spacing must be >= 0");
  if (record_every < 0) throw ConfigError("simulation: record_every must be >= 0");
}

std::size_t Path::index_of(double t) const {
  const double x = t / step;
  const double k = std::round(x);
  if (!(k >= 0.0) || k >= static_cast<double>(values.size()))
    throw RangeError("time " + std::to_string(t) + " lies outside the simulated horizon [0, " +
                     std::to_string(horizon()) + "]");
  if (std::abs(x - k) > 1e-6)
    throw RangeError("time " + std::to_string(t) + " is not a recorded node (step " +
                     std::to_string(step) + ")");
  return static_cast<std::size_t>(k);
}

Path simulate_tv_ou(const CoefficientCurve& a, const LevySpec& noise, const SimulationConfig& config) {
  config.validate();
  validate(noise);
  const double h = config.fine_step();
  const std::size_t steps = fine_steps(config);
  const int samples = std::max(2001, static_cast<int>(config.horizon) + 1);
  const double a_min = a.min_over(0.0, config.horizon, samples);
  if (!(a_min > 0.0))
    throw ConfigError("simulate_tv_ou: a(t) must be positive on [0, T]; min is " +
                      std::to_string(a_min));
  double a_max = 0.0;
  for (int k = 0; k < samples; ++k) a_max = std::max(a_max, a(config.horizon * k / (samples - 1)));
  const double Nh = config.N * h;
  if (a_max * Nh >= 1.0)
    throw ConfigError("simulate_tv_ou: unstable Euler step (N a h = " + std::to_string(a_max * Nh) +
                      " >= 1); increase sim_ratio");

  const IncrementSampler dL(noise, Nh);
  RngStream rng(config.seed, config.stream);
  const int stride = config.record_stride();
  Path path;
  path.N = config.N;
  path.fine_step = h;
  path.step = h * stride;
  path.values.reserve(steps / stride + 1);
  path.values.push_back(0.0);
  double y = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    y = y - Nh * a(t) * y + dL(rng);
    if ((k + 1) % stride == 0) path.values.push_back(y);
  }
  return path;
}

Path simulate_tv_statespace(const ModelFamily& family, const ParameterCurve& theta,
                            const LevySpec& noise, const SimulationConfig& config) {
  config.validate();
  validate(noise);
  if (theta.dim() != static_cast<std::size_t>(family.param_dim()))
    throw ConfigError("simulate_tv_statespace: parameter curve dimension does not match the family");
  const double h = config.fine_step();
  const std::size_t steps = fine_steps(config);
  const double Nh = config.N * h;
  const int p = family.state_dim();

  // Stability along the curve, checked on a grid.
  const int samples = std::max(2001, static_cast<int>(config.horizon) + 1);
  for (int k = 0; k < samples; ++k) {
    const double t = config.horizon * k / (samples - 1);
    StateSpaceMatrices m;
    try {
      m = family.matrices(theta(t));
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("simulate_tv_statespace: ") + e.what() + " " + at_time(t));
    }
    const Eigen::VectorXcd eig = m.A.eigenvalues();
    for (Eigen::Index j = 0; j < eig.size(); ++j) {
      if (!(eig(j).real() < 0.0))
        throw ConfigError("simulate_tv_statespace: A has an eigenvalue with nonnegative real part " +
                          at_time(t));
      if (std::abs(eig(j)) * Nh >= 1.0)
        throw ConfigError("simulate_tv_statespace: unstable Euler step " + at_time(t) +
                          "; increase sim_ratio");
    }
  }

  const double sigma_l = levy_moments(noise).variance;
  const IncrementSampler dL(noise, Nh);
  RngStream rng(config.seed, config.stream);
  const int stride = config.record_stride();
  Path path;
  path.N = config.N;
  path.fine_step = h;
  path.step = h * stride;
  path.state_dim = config.keep_states ? p : 0;
  path.values.reserve(steps / stride + 1);
  path.values.push_back(0.0);
  if (config.keep_states) path.states.assign(p, 0.0);

  double x[kMaxStateDim] = {}, next[kMaxStateDim];
  double drift[kMaxStateDim * kMaxStateDim], c[kMaxStateDim], b[kMaxStateDim];
  std::vector<double> cached;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    std::vector<double> th = theta(t);
    if (th != cached) {
      const StateSpaceMatrices m = family.matrices(th);
      const double scale = std::sqrt(m.sigma / sigma_l);
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) drift[i * p + j] = Nh * m.A(i, j);
        c[i] = m.C(i) * scale;
        b[i] = m.B(i);
      }
      cached = std::move(th);
    }
    const double inc = dL(rng);
    for (int i = 0; i < p; ++i) {
      double s = x[i] + c[i] * inc;
      for (int j = 0; j < p; ++j) s += drift[i * p + j] * x[j];
      next[i] = s;
    }
    for (int i = 0; i < p; ++i) x[i] = next[i];
    if ((k + 1) % stride == 0) {
      // Y(t_{k+1}) = B(t_{k+1})' X(t_{k+1}); B above belongs to the start of the step.
      const std::vector<double> th_next = theta(static_cast<double>(k + 1) * h);
      Eigen::VectorXd b_next;
      if (th_next != cached) b_next = family.matrices(th_next).B;
      double y = 0.0;
      for (int i = 0; i < p; ++i) y += (th_next != cached ? b_next(i) : b[i]) * x[i];
      path.values.push_back(y);
      if (config.keep_states) path.states.insert(path.states.end(), x, x + p);
    }
  }
  return path;
}

Window extract_window(const Path& path, const SamplingGrid& grid, int history) {
  grid.validate();
  if (history < 0) throw RangeError("extract_window: history must be >= 0");
  const int m = grid.m();
  Window w;
  w.grid = grid;
  const double first = grid.time(-m - history);
  const double last = grid.time(m);
  if (first < -1e-9 || last > path.horizon() + 1e-9 * std::max(1.0, path.horizon()))
    throw RangeError("extract_window: window [" + std::to_string(first) + ", " +
                     std::to_string(last) + "] exceeds the simulated horizon [0, " +
                     std::to_string(path.horizon()) + "]");
  w.values.resize(2 * m + 1);
  for (int i = -m; i <= m; ++i) w.values[i + m] = path.values[path.index_of(grid.time(i))];
  w.left_history.resize(history);
  for (int k = 1; k <= history; ++k)
    w.left_history[k - 1] = path.values[path.index_of(grid.time(-m - k))];
  if (grid.scheme == Scheme::O2) {
    const double shift = grid.Delta / grid.N;
    w.shifted.resize(2 * m + 1);
    for (int i = -m; i <= m; ++i) {
      const double t = grid.time(i) + shift;
      const double k = std::round(t / path.step);
      if (k >= static_cast<double>(path.size()))
        throw RangeError("extract_window: shifted observation beyond the simulated horizon");
      w.shifted[i + m] = path.values[static_cast<std::size_t>(k)];
    }
  }
  return w;
}

void write_path_csv(const Path& path, std::ostream& out) {
  out << "t,value";
  for (int j = 0; j < path.state_dim; ++j) out << ",x" << (j + 1);
  out << '\n';
  char buf[32];
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", path.time(k));
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.17g", path.values[k]);
    out << buf;
    for (int j = 0; j < path.state_dim; ++j) {
      std::snprintf(buf, sizeof buf, ",%.17g", path.states[k * path.state_dim + j]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace locstat
