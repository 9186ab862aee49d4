#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "locstat/box.hpp"

namespace locstat {

/// Differential evolution (DE/rand/1/bin) settings.
struct DeConfig {
  int population = 0;  // 0 selects 15 * dim
  double F = 0.8;
  double CR = 0.9;
  int max_gens = 300;
  double tol = 1e-8;  // stop once max - min of the population objective is below tol
  std::uint64_t seed = 20240607;

  int population_for(std::size_t dim) const {
    return population > 0 ? population : static_cast<int>(15 * dim);
  }
  /// Throws ConfigError when population < 4, F outside (0, 2] or CR outside [0, 1].
  void validate(std::size_t dim) const;
};

struct DeResult {
  std::vector<double> x;
  double value = 0.0;
  int generations = 0;
  long evaluations = 0;
  long infinite_evaluations = 0;  // +inf sentinels returned by the objective
  bool converged = false;         // spread criterion met before max_gens
  std::vector<double> best_history;  // best value after initialization and after each generation
};

using Objective = std::function<double(std::span<const double>)>;

/// Box-constrained minimization. Population initialized by Latin hypercube over the box;
/// out-of-box mutants are reflected back. NaN objective values are treated as +inf.
/// Throws OptimizationError when every initial point evaluates to +inf.
DeResult de_minimize(const Objective& objective, const Box& box, const DeConfig& config);

/// Reflects x into [lo, hi] (repeatedly, so any finite x lands inside).
double reflect_into(double x, double lo, double hi);

}  // namespace locstat
