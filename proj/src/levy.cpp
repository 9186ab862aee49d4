#include "locstat/levy.hpp"

#include <cmath>
#include <sstream>

#include "locstat/errors.hpp"

namespace locstat {

double NigNoise::kappa() const { return std::sqrt(alpha * alpha - beta * beta); }

NigNoise NigNoise::centered(double alpha, double beta, double delta) {
  NigNoise n{alpha, beta, delta, 0.0};
  n.mu = -delta * beta / n.kappa();
  return n;
}

LevySpec default_gaussian_noise() { return GaussianNoise{0.2}; }

LevySpec default_nig_noise() { return NigNoise{3.0, 1.0, 2.0, -2.0 / std::sqrt(8.0)}; }

void validate(const LevySpec& spec) {
  if (const auto* g = std::get_if<GaussianNoise>(&spec)) {
    if (!(g->sigma2 > 0.0) || !std::isfinite(g->sigma2))
      throw ParameterError("Gaussian noise: sigma2 must be > 0");
    return;
  }
  const auto& n = std::get<NigNoise>(spec);
  if (!std::isfinite(n.alpha) || !std::isfinite(n.beta) || !std::isfinite(n.delta) ||
      !std::isfinite(n.mu))
    throw ParameterError("NIG noise: parameters must be finite");
  if (!(n.alpha >= 0.0)) throw ParameterError("NIG noise: alpha must be >= 0");
  if (!(n.alpha * n.alpha > n.beta * n.beta))
    throw ParameterError("NIG noise: requires alpha^2 > beta^2");
  if (!(n.delta > 0.0)) throw ParameterError("NIG noise: delta must be > 0");
}

LevyMoments levy_moments(const LevySpec& spec) {
  validate(spec);
  if (const auto* g = std::get_if<GaussianNoise>(&spec)) return {0.0, g->sigma2};
  const auto& n = std::get<NigNoise>(spec);
  const double k = n.kappa();
  return {n.mu + n.delta * n.beta / k, n.delta * n.alpha * n.alpha / (k * k * k)};
}

bool is_centered(const LevySpec& spec, double tolerance) {
  return std::abs(levy_moments(spec).mean) <= tolerance;
}

double sample_inverse_gaussian(double mean, double shape, RngStream& rng) {
  const double nu = rng.normal();
  const double y = nu * nu;
  if (y == 0.0) return mean;
  // x = mu + mu^2 y / (2 lambda) - mu / (2 lambda) sqrt(4 mu lambda y + mu^2 y^2), rearranged
  // to avoid cancellation when mu y >> lambda.
  const double my = mean * y;
  const double s = std::sqrt(my * my + 4.0 * mean * shape * y);
  const double x = 4.0 * mean * mean * shape * y / ((s + my) * (s + my));
  return rng.uniform() * (mean + x) <= mean ? x : mean * mean / x;
}

IncrementSampler::IncrementSampler(const LevySpec& spec, double dt) : dt_(dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("increment size dt must be >= 0");
  validate(spec);
  if (const auto* g = std::get_if<GaussianNoise>(&spec)) {
    gaussian_ = true;
    sd_ = std::sqrt(g->sigma2 * dt);
    return;
  }
  const auto& n = std::get<NigNoise>(spec);
  gaussian_ = false;
  const double scale = n.delta * dt;
  ig_mean_ = scale / n.kappa();
  ig_shape_ = scale * scale;
  beta_ = n.beta;
  drift_ = n.mu * dt;
}

double IncrementSampler::operator()(RngStream& rng) const {
  if (dt_ == 0.0) return 0.0;
  if (gaussian_) return sd_ * rng.normal();
  const double z = sample_inverse_gaussian(ig_mean_, ig_shape_, rng);
  return drift_ + beta_ * z + std::sqrt(z) * rng.normal();
}

double sample_increment(const LevySpec& spec, double dt, RngStream& rng) {
  return IncrementSampler(spec, dt)(rng);
}

std::string describe(const LevySpec& spec) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* g = std::get_if<GaussianNoise>(&spec)) {
    os << "gauss(sigma2=" << g->sigma2 << ")";
  } else {
    const auto& n = std::get<NigNoise>(spec);
    os << "nig(alpha=" << n.alpha << ",beta=" << n.beta << ",delta=" << n.delta << ",mu=" << n.mu
       << ")";
  }
  return os.str();
}

}  // namespace locstat
