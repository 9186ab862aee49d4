#pragma once

#include <string>
#include <variant>

#include "locstat/rng.hpp"

namespace locstat {

/// Brownian driver: L(1) ~ N(0, sigma2).
struct GaussianNoise {
  double sigma2 = 0.2;
};

/// Normal-inverse-Gaussian driver: L(1) ~ NIG(alpha, beta, delta, mu).
struct NigNoise {
  double alpha = 3.0;
  double beta = 1.0;
  double delta = 2.0;
  double mu = 0.0;

  /// kappa = sqrt(alpha^2 - beta^2).
  double kappa() const;

  /// Parameters with mu chosen so that E[L(1)] = 0.
  static NigNoise centered(double alpha, double beta, double delta);
};

using LevySpec = std::variant<GaussianNoise, NigNoise>;

struct LevyMoments {
  double mean = 0.0;
  double variance = 0.0;  // Sigma_L = Var(L(1))
};

/// sigma2 = 0.2.
LevySpec default_gaussian_noise();
/// NIG(3, 1, 2, -2/sqrt(8)), centered with Sigma_L = 9 sqrt(2) / 16.
LevySpec default_nig_noise();

/// Throws ParameterError unless sigma2 > 0, or alpha^2 > beta^2, delta > 0 for NIG.
void validate(const LevySpec& spec);
bool is_centered(const LevySpec& spec, double tolerance = 1e-12);

/// Closed-form mean and variance of L(1).
LevyMoments levy_moments(const LevySpec& spec);

/// One increment L(t + dt) - L(t). Gaussian: N(0, sigma2 dt). NIG: NIG(alpha, beta, delta dt, mu dt),
/// drawn as a normal variance-mean mixture over an inverse-Gaussian variable
/// (Michael-Schucany-Haas). dt = 0 returns 0; dt < 0 throws DomainError.
double sample_increment(const LevySpec& spec, double dt, RngStream& rng);

/// Inverse-Gaussian draw with given mean and shape (Michael-Schucany-Haas).
double sample_inverse_gaussian(double mean, double shape, RngStream& rng);

/// Sampler with the per-step constants folded in; used by the path simulators
/// where the same dt is drawn millions of times.
class IncrementSampler {
 public:
  IncrementSampler(const LevySpec& spec, double dt);
  double operator()(RngStream& rng) const;
  double dt() const { return dt_; }

 private:
  bool gaussian_ = true;
  double dt_ = 0.0;
  double sd_ = 0.0;  // Gaussian
  double ig_mean_ = 0.0, ig_shape_ = 0.0, beta_ = 0.0, drift_ = 0.0;  // NIG
};

std::string describe(const LevySpec& spec);

}  // namespace locstat
