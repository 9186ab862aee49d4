#include "locstat/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "locstat/errors.hpp"
#include "locstat/rng.hpp"

namespace locstat {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int uniform_index(RngStream& rng, int n) {
  return std::min(n - 1, static_cast<int>(rng.uniform() * n));
}

double sanitize(double v) { return std::isnan(v) ? kInf : v; }

}  // namespace

bool Box::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (!(x[k] >= lo[k] && x[k] <= hi[k])) return false;
  return true;
}

void Box::validate() const {
  if (lo.size() != hi.size() || lo.empty()) throw ConfigError("box: lo/hi dimension mismatch");
  for (std::size_t k = 0; k < dim(); ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]))
      throw ConfigError("box: bounds must be finite (compact parameter space)");
    if (!(lo[k] <= hi[k])) throw ConfigError("box: lo must not exceed hi");
  }
}

void DeConfig::validate(std::size_t dim) const {
  if (population_for(dim) < 4) throw ConfigError("de: population must be at least 4");
  if (!(F > 0.0 && F <= 2.0)) throw ConfigError("de: F must lie in (0, 2]");
  if (!(CR >= 0.0 && CR <= 1.0)) throw ConfigError("de: CR must lie in [0, 1]");
  if (max_gens < 0) throw ConfigError("de: max_gens must be >= 0");
  if (!(tol >= 0.0)) throw ConfigError("de: tol must be >= 0");
}

double reflect_into(double x, double lo, double hi) {
  const double w = hi - lo;
  if (w <= 0.0) return lo;
  if (x >= lo && x <= hi) return x;
  double t = std::fmod(x - lo, 2.0 * w);
  if (t < 0.0) t += 2.0 * w;
  return std::clamp(lo + (t <= w ? t : 2.0 * w - t), lo, hi);
}

DeResult de_minimize(const Objective& objective, const Box& box, const DeConfig& config) {
  box.validate();
  const std::size_t d = box.dim();
  config.validate(d);
  const int np = config.population_for(d);
  RngStream rng(config.seed, 0);

  DeResult result;
  auto evaluate = [&](std::span<const double> x) {
    const double v = sanitize(objective(x));
    ++result.evaluations;
    if (v == kInf) ++result.infinite_evaluations;
    return v;
  };

  // Latin hypercube: one point per stratum and dimension, strata permuted independently.
  std::vector<std::vector<double>> pop(np, std::vector<double>(d));
  std::vector<int> perm(np);
  for (std::size_t k = 0; k < d; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = np - 1; i > 0; --i) std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
    const double w = box.hi[k] - box.lo[k];
    for (int i = 0; i < np; ++i)
      pop[i][k] = std::min(box.hi[k], box.lo[k] + w * (perm[i] + rng.uniform()) / np);
  }
  std::vector<double> fit(np);
  for (int i = 0; i < np; ++i) fit[i] = evaluate(pop[i]);
  if (std::all_of(fit.begin(), fit.end(), [](double v) { return v == kInf; }))
    throw OptimizationError("de_minimize: objective is +inf at every initial point");

  auto best_index = [&] {
    return static_cast<int>(std::min_element(fit.begin(), fit.end()) - fit.begin());
  };
  result.best_history.push_back(fit[best_index()]);

  std::vector<std::vector<double>> trials(np, std::vector<double>(d));
  for (int gen = 0; gen < config.max_gens; ++gen) {
    const auto [lo_it, hi_it] = std::minmax_element(fit.begin(), fit.end());
    if (*hi_it < kInf && *hi_it - *lo_it < config.tol) {
      result.converged = true;
      break;
    }
    // All random draws of a generation happen before any evaluation.
    for (int i = 0; i < np; ++i) {
      int r1, r2, r3;
      do r1 = uniform_index(rng, np); while (r1 == i);
      do r2 = uniform_index(rng, np); while (r2 == i || r2 == r1);
      do r3 = uniform_index(rng, np); while (r3 == i || r3 == r1 || r3 == r2);
      const int jrand = uniform_index(rng, static_cast<int>(d));
      for (std::size_t k = 0; k < d; ++k) {
        const bool cross = rng.uniform() < config.CR || static_cast<int>(k) == jrand;
        const double v = cross ? pop[r1][k] + config.F * (pop[r2][k] - pop[r3][k]) : pop[i][k];
        trials[i][k] = reflect_into(v, box.lo[k], box.hi[k]);
      }
    }
    std::vector<double> trial_fit(np);
    for (int i = 0; i < np; ++i) trial_fit[i] = evaluate(trials[i]);
    for (int i = 0; i < np; ++i)
      if (trial_fit[i] <= fit[i]) {
        pop[i].swap(trials[i]);
        fit[i] = trial_fit[i];
      }
    ++result.generations;
    result.best_history.push_back(fit[best_index()]);
  }
  if (!result.converged) {
    const auto [lo_it, hi_it] = std::minmax_element(fit.begin(), fit.end());
    result.converged = *hi_it < kInf && *hi_it - *lo_it < config.tol;
  }
  const int b = best_index();
  result.x = pop[b];
  result.value = fit[b];
  return result;
}

}  // namespace locstat
